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

#include <functional>
#include <string_view>

#include "vlat/lattice.hpp"

namespace vlat {

struct ReductionConfig {
  int bin_factor = 10;
  int poly_degree = 2;
  /// Fraction of the largest off-DC spectral magnitude below which Fourier
  /// coefficients are discarded.
  double noise_floor = 0.2;
  /// Reference pixels below this fraction of the reference mean are excluded.
  double guard_fraction = 0.01;

  void validate() const;
};

/// Sums factor x factor blocks; trailing rows/columns that do not fill a
/// block are cropped. An output pixel is excluded if any input pixel in its
/// block is.
DetectorImage bin(const DetectorImage& image, int factor);

/// Pixelwise image / reference. Reference pixels below guard_fraction times
/// the reference mean are excluded instead of divided.
DetectorImage flat_field(const DetectorImage& image, const DetectorImage& reference, double guard_fraction = 0.01);

/// Fits a least-squares polynomial of the given degree to the row means
/// (in the normalized coordinate v in [-1, 1]) and divides each row by it.
DetectorImage remove_vertical_drift(const DetectorImage& image, int poly_degree);

/// I / <I> - 1 over included pixels; excluded pixels are set to 0. An image
/// already of kind zero_mean is returned unchanged.
DetectorImage normalize_zero_mean(const DetectorImage& image);

/// Zeroes every Fourier coefficient whose magnitude is below
/// noise_floor * (largest off-DC magnitude) and transforms back. The DC
/// term is always kept. Conjugate pairs are zeroed together.
DetectorImage fourier_denoise(const DetectorImage& image, double noise_floor);

/// Stage callback: (1-based index, name, output image).
using StageObserver = std::function<void(int, std::string_view, const DetectorImage&)>;

inline constexpr int kReductionStages = 5;

/// bin -> flat_field -> remove_vertical_drift -> normalize_zero_mean ->
/// fourier_denoise, in that fixed order.
DetectorImage reduce_pipeline(const DetectorImage& lattice, const DetectorImage& flat, const ReductionConfig& cfg,
                              const StageObserver& observer = {});

}  // namespace vlat
