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
#include <cstdint>
#include <vector>

#include "vlat/types.hpp"
#include "vlat/wavefield.hpp"

namespace vlat {

enum class ImageKind {
  raw_counts,  // non-negative integer counts
  normalized,  // ratio-normalized intensity
  zero_mean,   // I / <I> - 1
};

/// Row-major scalar raster. Pixel (i, j) covers [i, i+1) x [j, j+1) in
/// pitch units, so its center is ((i + 1/2) pitch, (j + 1/2) pitch) in mm.
/// mask[k] == 0 marks a pixel excluded from fits.
struct DetectorImage {
  std::size_t width = 0;
  std::size_t height = 0;
  double pitch = 1.0;
  ImageKind kind = ImageKind::normalized;
  std::vector<double> values;
  std::vector<std::uint8_t> mask;

  DetectorImage() = default;
  DetectorImage(std::size_t w, std::size_t h, double pitch, ImageKind kind, double fill = 0.0);

  double& at(std::size_t i, std::size_t j) { return values[j * width + i]; }
  double at(std::size_t i, std::size_t j) const { return values[j * width + i]; }
  bool included(std::size_t i, std::size_t j) const { return mask[j * width + i] != 0; }
  Vec2 pixel_center(std::size_t i, std::size_t j) const {
    return {(static_cast<double>(i) + 0.5) * pitch, (static_cast<double>(j) + 0.5) * pitch};
  }
  std::size_t included_count() const;
  /// Throws InvalidArgument on inconsistent sizes or a non-positive pitch.
  void validate() const;
};

/// Parameters of the fringe model
///   f(r) = exp(-|r - mu|^2 / s^2) [a1 cos(eta1.r + alpha1p) + a2 cos(eta2.r + alpha2p)
///                                  + a3 cos((eta1 - eta2).r + alpha1p - alpha2p)]
/// plus the expected count level used for synthesis.
struct LatticeTruth {
  Vec2 eta1{};
  Vec2 eta2{};
  double alpha1p = 0.0;
  double alpha2p = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  Vec2 mu{};
  double s = 1.0;
  double mean_counts = 1.0;

  void validate() const;
};

/// Evaluates the fringe model at r (no pedestal).
double lattice_model(const LatticeTruth& t, Vec2 r);

/// Ideal intensity (1/3)[3 + 2cos(k y + a1) + 2cos(k x + a2) + 2cos(k (x - y) + dAlpha)].
double intensity_ideal(Vec2 r, const InterferometerConfig& cfg);

/// Smooth illumination as a separable polynomial P(u) Q(v) in the
/// normalized detector coordinates u, v in [-1, 1].
struct Illumination {
  std::vector<double> x_poly{1.0};
  std::vector<double> y_poly{1.0};

  double operator()(double u, double v) const;
  /// Copy with y_poly multiplied by the polynomial `drift`.
  Illumination with_vertical_drift(const std::vector<double>& drift) const;
};

/// Evaluates c0 + c1 t + c2 t^2 + ... by Horner's rule.
double polyval(const std::vector<double>& coeffs, double t);

/// Normalized coordinate of a pixel center along an axis of n pixels.
inline double unit_coordinate(std::size_t index, std::size_t n) {
  return 2.0 * (static_cast<double>(index) + 0.5) / static_cast<double>(n) - 1.0;
}

/// Expected counts mean_counts * illumination * (1 + f(r)). Throws
/// InvalidArgument if any expected value is negative.
DetectorImage expected_image(const LatticeTruth& truth, std::size_t width, std::size_t height, double pitch,
                             const Illumination& illumination = {});

/// Poisson realization of expected_image. Each row draws from its own
/// generator seeded by (seed, row), so the image does not depend on the
/// thread count.
DetectorImage synthesize_image(const LatticeTruth& truth, std::size_t width, std::size_t height, double pitch,
                               std::uint64_t seed, const Illumination& illumination = {});

/// Prisms-out reference: Poisson field around mean_counts * illumination.
DetectorImage flat_image(std::size_t width, std::size_t height, double pitch, double mean_counts,
                         std::uint64_t seed, const Illumination& illumination = {});

}  // namespace vlat
