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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <numeric>

#include "generators.hpp"
#include "vlat/error.hpp"
#include "vlat/lattice.hpp"

namespace {

using namespace vlat;

LatticeTruth square_lattice(double period = 1.83) {
  const double k = kTwoPi / period;
  LatticeTruth t;
  t.eta1 = {0.0, k};
  t.eta2 = {k, 0.0};
  t.alpha1p = 0.4;
  t.alpha2p = -1.1;
  t.a1 = t.a2 = t.a3 = 0.2861;
  t.mu = {8.0, 8.0};
  t.s = 8.0;
  t.mean_counts = 1.5;
  return t;
}

TEST(LatticeModel, ThreeCosinesUnderTheEnvelope) {
  const LatticeTruth t = square_lattice();
  prop::for_all(100, 31, [&](prop::Gen& g) {
    const Vec2 r{g.uniform(0, 16), g.uniform(0, 16)};
    const double env = std::exp(-(std::pow(r.x - 8, 2) + std::pow(r.y - 8, 2)) / 64.0);
    const double p1 = dot(t.eta1, r) + t.alpha1p, p2 = dot(t.eta2, r) + t.alpha2p;
    const double expect = env * 0.2861 * (std::cos(p1) + std::cos(p2) + std::cos(p1 - p2));
    EXPECT_NEAR(lattice_model(t, r), expect, 1e-14);
  });
}

TEST(LatticeModel, IdealIntensityIsTheTestStatePattern) {
  // |1 + e^{i(ky + a1)} + e^{i(kx + a2)}|^2 / 3.
  prop::for_all(100, 32, [](prop::Gen& g) {
    const InterferometerConfig cfg{g.uniform(0.1, 5), g.phase(), g.phase()};
    const Vec2 r{g.uniform(-3, 3), g.uniform(-3, 3)};
    const cplx s = 1.0 + std::exp(cplx(0, cfg.k_perp * r.y + cfg.alpha1)) + std::exp(cplx(0, cfg.k_perp * r.x + cfg.alpha2));
    EXPECT_NEAR(intensity_ideal(r, cfg), std::norm(s) / 3.0, 1e-13);
  });
}

TEST(LatticeTruth, Validation) {
  LatticeTruth t = square_lattice();
  EXPECT_NO_THROW(t.validate());
  t.a2 = 1.5;
  EXPECT_THROW(t.validate(), InvalidArgument);
  t = square_lattice();
  t.s = 0.0;
  EXPECT_THROW(t.validate(), InvalidArgument);
  t = square_lattice();
  t.mu.x = std::nan("");
  EXPECT_THROW(t.validate(), InvalidArgument);
}

TEST(Illumination, SeparablePolynomial) {
  EXPECT_DOUBLE_EQ(polyval({1.0, 2.0, 3.0}, 2.0), 17.0);
  EXPECT_DOUBLE_EQ(polyval({}, 2.0), 0.0);
  const Illumination ill{{1.0, 0.1}, {2.0, 0.0, -0.5}};
  EXPECT_NEAR(ill(0.5, -1.0), 1.05 * 1.5, 1e-15);
  const Illumination drift = ill.with_vertical_drift({1.0, 1.0});
  EXPECT_NEAR(drift(0.5, 0.5), ill(0.5, 0.5) * 1.5, 1e-15);
  EXPECT_DOUBLE_EQ(unit_coordinate(0, 2), -0.5);
  EXPECT_DOUBLE_EQ(unit_coordinate(1, 2), 0.5);
}

TEST(ExpectedImage, CountsFollowModel) {
  const LatticeTruth t = square_lattice();
  const Illumination ill{{1.0, 0.08, -0.05}, {1.0, -0.06, -0.1}};
  const DetectorImage img = expected_image(t, 40, 30, 0.4, ill);
  EXPECT_EQ(img.width, 40u);
  EXPECT_EQ(img.height, 30u);
  for (std::size_t j : {0u, 11u, 29u})
    for (std::size_t i : {0u, 17u, 39u}) {
      const double expect =
          1.5 * ill(unit_coordinate(i, 40), unit_coordinate(j, 30)) * (1.0 + lattice_model(t, img.pixel_center(i, j)));
      EXPECT_NEAR(img.at(i, j), expect, 1e-12);
    }
}

TEST(ExpectedImage, RejectsNegativeIntensity) {
  LatticeTruth t = square_lattice();
  t.a1 = t.a2 = t.a3 = 1.0;
  EXPECT_THROW(expected_image(t, 80, 80, 0.2), InvalidArgument);
}

TEST(Synthesis, SeededOutputIsByteDeterministic) {
  const LatticeTruth t = square_lattice();
  const auto a = synthesize_image(t, 123, 77, 0.1, 99);
  const auto b = synthesize_image(t, 123, 77, 0.1, 99);
  ASSERT_EQ(a.values.size(), b.values.size());
  EXPECT_EQ(std::memcmp(a.values.data(), b.values.data(), a.values.size() * sizeof(double)), 0);
  EXPECT_EQ(a.kind, ImageKind::raw_counts);
  const auto c = synthesize_image(t, 123, 77, 0.1, 100);
  EXPECT_NE(std::memcmp(a.values.data(), c.values.data(), a.values.size() * sizeof(double)), 0);
}

TEST(Synthesis, PoissonStatistics) {
  LatticeTruth t = square_lattice();
  t.a1 = t.a2 = t.a3 = 0.0;
  t.mean_counts = 20.0;
  const auto img = synthesize_image(t, 200, 200, 0.1, 5);
  double sum = 0, sum2 = 0;
  for (double v : img.values) {
    EXPECT_EQ(v, std::floor(v));
    EXPECT_GE(v, 0.0);
    sum += v;
    sum2 += v * v;
  }
  const double n = static_cast<double>(img.values.size());
  const double mean = sum / n, var = sum2 / n - mean * mean;
  EXPECT_NEAR(mean, 20.0, 0.1);  // standard error ~0.022
  EXPECT_NEAR(var, 20.0, 0.6);
}

TEST(Synthesis, FlatImageFollowsIllumination) {
  const Illumination ill{{1.0, 0.3}, {1.0}};
  const auto img = flat_image(400, 20, 0.1, 50.0, 3, ill);
  double left = 0, right = 0;
  for (std::size_t j = 0; j < 20; ++j)
    for (std::size_t i = 0; i < 100; ++i) {
      left += img.at(i, j);
      right += img.at(399 - i, j);
    }
  EXPECT_NEAR(right / left, (1.0 + 0.3 * 0.75) / (1.0 - 0.3 * 0.75), 0.03);
}

}  // namespace
