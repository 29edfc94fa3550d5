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

#include "vlat/lattice.hpp"

#include <cmath>
#include <random>
#include <string>

#include "vlat/error.hpp"
#include "vlat/parallel.hpp"

namespace vlat {

DetectorImage::DetectorImage(std::size_t w, std::size_t h, double pitch_, ImageKind kind_, double fill)
    : width(w), height(h), pitch(pitch_), kind(kind_), values(w * h, fill), mask(w * h, 1) {
  validate();
}

std::size_t DetectorImage::included_count() const {
  std::size_t n = 0;
  for (auto m : mask) n += m != 0;
  return n;
}

void DetectorImage::validate() const {
  if (width == 0 || height == 0) throw InvalidArgument("DetectorImage: empty raster");
  if (!(std::isfinite(pitch) && pitch > 0.0)) throw InvalidArgument("DetectorImage: pitch must be positive");
  if (values.size() != width * height || mask.size() != width * height)
    throw InvalidArgument("DetectorImage: storage does not match dimensions");
}

void LatticeTruth::validate() const {
  for (double a : {a1, a2, a3})
    if (!(a >= 0.0 && a <= 1.0)) throw InvalidArgument("LatticeTruth: amplitudes must lie in [0, 1]");
  if (!(std::isfinite(s) && s > 0.0)) throw InvalidArgument("LatticeTruth: envelope width must be positive");
  if (!(std::isfinite(mean_counts) && mean_counts > 0.0))
    throw InvalidArgument("LatticeTruth: mean_counts must be positive");
  for (double v : {eta1.x, eta1.y, eta2.x, eta2.y, alpha1p, alpha2p, mu.x, mu.y})
    if (!std::isfinite(v)) throw InvalidArgument("LatticeTruth: non-finite parameter");
}

double lattice_model(const LatticeTruth& t, Vec2 r) {
  const Vec2 d = r - t.mu;
  const double env = std::exp(-dot(d, d) / (t.s * t.s));
  const double p1 = dot(t.eta1, r) + t.alpha1p;
  const double p2 = dot(t.eta2, r) + t.alpha2p;
  return env * (t.a1 * std::cos(p1) + t.a2 * std::cos(p2) + t.a3 * std::cos(p1 - p2));
}

double intensity_ideal(Vec2 r, const InterferometerConfig& cfg) {
  const double k = cfg.k_perp;
  return (3.0 + 2.0 * std::cos(k * r.y + cfg.alpha1) + 2.0 * std::cos(k * r.x + cfg.alpha2) +
          2.0 * std::cos(k * (r.x - r.y) + cfg.delta_alpha())) /
         3.0;
}

double polyval(const std::vector<double>& coeffs, double t) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double Illumination::operator()(double u, double v) const { return polyval(x_poly, u) * polyval(y_poly, v); }

Illumination Illumination::with_vertical_drift(const std::vector<double>& drift) const {
  Illumination out = *this;
  if (drift.empty() || y_poly.empty()) {
    out.y_poly = {0.0};
    return out;
  }
  out.y_poly.assign(y_poly.size() + drift.size() - 1, 0.0);
  for (std::size_t a = 0; a < y_poly.size(); ++a)
    for (std::size_t b = 0; b < drift.size(); ++b) out.y_poly[a + b] += y_poly[a] * drift[b];
  return out;
}

DetectorImage expected_image(const LatticeTruth& truth, std::size_t width, std::size_t height, double pitch,
                             const Illumination& illumination) {
  truth.validate();
  DetectorImage img(width, height, pitch, ImageKind::normalized);
  for (std::size_t j = 0; j < height; ++j) {
    const double v = unit_coordinate(j, height);
    for (std::size_t i = 0; i < width; ++i) {
      const double lambda =
          truth.mean_counts * illumination(unit_coordinate(i, width), v) * (1.0 + lattice_model(truth, img.pixel_center(i, j)));
      if (!(lambda >= 0.0))
        throw InvalidArgument("expected intensity is negative at pixel (" + std::to_string(i) + ", " +
                              std::to_string(j) + "); reduce the fringe amplitudes");
      img.at(i, j) = lambda;
    }
  }
  return img;
}

namespace {

void poisson_rows(DetectorImage& img, std::uint64_t seed) {
  parallel_for(0, img.height, [&](std::size_t j) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(j)};
    std::mt19937_64 gen(seq);
    for (std::size_t i = 0; i < img.width; ++i) {
      double& v = img.at(i, j);
      if (v > 0.0) {
        std::poisson_distribution<long long> dist(v);
        v = static_cast<double>(dist(gen));
      } else {
        v = 0.0;
      }
    }
  });
  img.kind = ImageKind::raw_counts;
}

}  // namespace

DetectorImage synthesize_image(const LatticeTruth& truth, std::size_t width, std::size_t height, double pitch,
                               std::uint64_t seed, const Illumination& illumination) {
  DetectorImage img = expected_image(truth, width, height, pitch, illumination);
  poisson_rows(img, seed);
  return img;
}

DetectorImage flat_image(std::size_t width, std::size_t height, double pitch, double mean_counts,
                         std::uint64_t seed, const Illumination& illumination) {
  LatticeTruth flat;
  flat.mean_counts = mean_counts;
  return synthesize_image(flat, width, height, pitch, seed, illumination);
}

}  // namespace vlat
