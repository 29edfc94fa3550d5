// Copyright 2026 The vlat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vlat/types.hpp"

namespace vlat {

/// Half spectrum of a real row-major raster: height rows of width/2 + 1
/// non-negative horizontal frequencies. Unnormalized forward transform with
/// kernel exp(-2 pi i (kx x / W + ky y / H)).
struct HalfSpectrum {
  std::size_t width = 0;   // of the real raster
  std::size_t height = 0;
  std::vector<cplx> bins;  // height * (width / 2 + 1)

  std::size_t cols() const { return width / 2 + 1; }
  cplx& at(std::size_t row, std::size_t col) { return bins[row * cols() + col]; }
  const cplx& at(std::size_t row, std::size_t col) const { return bins[row * cols() + col]; }
};

HalfSpectrum rfft2(std::span<const double> values, std::size_t width, std::size_t height);

/// Inverse of rfft2 including the 1/(W H) normalization.
std::vector<double> irfft2(const HalfSpectrum& spectrum);

/// Signed frequency index for a bin position along an axis of length n.
inline long signed_frequency(std::size_t index, std::size_t n) {
  return index <= n / 2 ? static_cast<long>(index) : static_cast<long>(index) - static_cast<long>(n);
}

}  // namespace vlat
