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
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "generators.hpp"
#include "oracles.hpp"
#include "vlat/error.hpp"
#include "vlat/vortexmap.hpp"

namespace {

using namespace vlat;

LatticeTruth square(double k, double a1 = 0.4, double a2 = -1.1) {
  LatticeTruth t;
  t.eta1 = {0.0, k};
  t.eta2 = {k, 0.0};
  t.alpha1p = a1;
  t.alpha2p = a2;
  t.a1 = t.a2 = t.a3 = 0.3;
  t.s = 8.0;
  return t;
}

TEST(DiskCoverage, InteriorExteriorAndArea) {
  EXPECT_DOUBLE_EQ(disk_coverage({0, 0}, 0.1, {0, 0}, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(disk_coverage({2, 0}, 0.1, {0, 0}, 1.0), 0.0);
  const double c = disk_coverage({1.0, 0.0}, 0.1, {0, 0}, 1.0);
  EXPECT_NEAR(c, 0.5, 0.02);
  prop::for_all(10, 61, [](prop::Gen& g) {
    const double R = g.uniform(0.3, 1.0), p = 0.02;
    const Vec2 center{g.uniform(-p, p), g.uniform(-p, p)};
    double area = 0;
    const int n = static_cast<int>(std::ceil(1.2 / p));
    for (int j = -n; j <= n; ++j)
      for (int i = -n; i <= n; ++i) area += disk_coverage({i * p, j * p}, p, center, R) * p * p;
    EXPECT_NEAR(area / (kPi * R * R), 1.0, 2e-4);
  });
}

TEST(Saaft, PureVortexHasItsOwnCharge) {
  for (int m : {-2, -1, 1, 3}) {
    ComplexField f(81, 81, 0.05, {-2.025, -2.025});
    for (std::size_t j = 0; j < 81; ++j)
      for (std::size_t i = 0; i < 81; ++i) {
        const Vec2 r = f.pixel_center(i, j);
        f.at(i, j) = std::pow(std::hypot(r.x, r.y), std::abs(m)) * std::exp(cplx(0, -m * std::atan2(r.y, r.x)));
      }
    const auto spec = saaft_spectrum(f, {0.0, 0.0}, 1.5, 5);
    EXPECT_NEAR(oam_from_spectrum(spec), m, 1e-6) << m;
    for (int l = -5; l <= 5; ++l) EXPECT_LT(std::abs(saaft(f, {0, 0}, 1.5, l) - spec[l + 5]), 1e-12);
  }
}

TEST(Saaft, DiskMustFitInsideTheField) {
  ComplexField f(10, 10, 0.1);
  EXPECT_THROW(saaft(f, {0.5, 0.5}, 0.6, 0), InvalidArgument);
  EXPECT_NO_THROW(saaft(f, {0.5, 0.5}, 0.4, 0));
}

TEST(OamFromSpectrum, WeightedMeanAndVanishingSpectrum) {
  EXPECT_EQ(oam_from_spectrum({0.0, 0.0, 0.0}), 0.0);
  EXPECT_NEAR(oam_from_spectrum({cplx{1, 0}, cplx{0, 0}, cplx{0, 3}}), (-1.0 + 9.0) / 10.0, 1e-15);
}

TEST(ReconstructTestField, TwoUnitPlaneWaves) {
  const LatticeTruth t = square(2.0);
  const GridSpec grid{8, 6, 0.3, {1.0, -0.5}};
  const ComplexField f = reconstruct_test_field(t, grid);
  for (std::size_t j = 0; j < 6; ++j)
    for (std::size_t i = 0; i < 8; ++i) {
      const Vec2 r = f.pixel_center(i, j);
      const cplx e = (std::exp(cplx(0, dot(t.eta1, r) + t.alpha1p)) + std::exp(cplx(0, dot(t.eta2, r) + t.alpha2p))) /
                     std::sqrt(2.0);
      EXPECT_LT(std::abs(f.at(i, j) - e), 1e-14);
    }
  FitResult unconverged;
  unconverged.params = t;
  EXPECT_THROW(reconstruct_test_field(unconverged, grid), InvalidArgument);
}

TEST(OamMap, ConstantFieldGivesZeroMap) {
  ComplexField f(60, 60, 0.01);
  for (auto& v : f.values) v = {0.7, -0.2};
  const OamMap m = oam_map(f, 0.1, 0.0, 5);
  ASSERT_GT(m.values.size(), 0u);
  for (double v : m.values) EXPECT_NEAR(v, 0.0, 1e-12);
  EXPECT_EQ(diagonal_invariance(m).relative, 0.0);
}

TEST(OamMap, GeometryIsPixelAligned) {
  ComplexField f(50, 40, 0.01, {0.3, 0.2});
  for (auto& v : f.values) v = 1.0;
  const OamMap m = oam_map(f, 0.1, 0.033, 3);
  EXPECT_NEAR(m.stride, 0.03, 1e-15);
  EXPECT_NEAR(m.domain_radius, 0.1, 0.0);
  EXPECT_EQ(m.l_range, 3);
  const double fx = (m.first_center.x - f.origin.x) / f.pitch - 0.5;
  EXPECT_NEAR(fx, std::round(fx), 1e-9);
  const Vec2 last = m.center(m.nx - 1, m.ny - 1);
  EXPECT_LE(last.x + 0.1, f.origin.x + 50 * 0.01 + 1e-12);
  EXPECT_GE(m.first_center.x - 0.1, f.origin.x - 1e-12);
  EXPECT_NEAR(oam_map(f, 0.08, 0.0, 3).stride, 0.02, 1e-15);  // radius / 4 in whole pixels
}

TEST(OamMap, InvariantAlongDiagonalsOfSquareLattice) {
  const double k = kTwoPi / 1.83, R = default_domain_radius(k);
  const double pitch = 2 * R / 40;
  const GridSpec grid{120, 120, pitch, {}};
  const OamMap m = oam_map(reconstruct_test_field(square(k), grid), R, 0.0, 5);
  const DiagonalReport d = diagonal_invariance(m);
  EXPECT_GT(d.lines, 0u);
  EXPECT_GT(d.range, 0.1);
  EXPECT_LT(d.relative, 1e-9);
}

TEST(OamMap, ValuesMatchUniformDiskOracle) {
  const double k = kTwoPi / 1.83, R = default_domain_radius(k);
  EXPECT_NEAR(k * R, 0.75, 1e-15);
  const LatticeTruth t = square(k);
  const GridSpec grid{100, 100, 2 * R / 60, {}};
  const OamMap m = oam_map(reconstruct_test_field(t, grid), R, 0.0, 5);
  for (std::size_t j = 0; j < m.ny; j += 5)
    for (std::size_t i = 0; i < m.nx; i += 5) {
      const Vec2 c = m.center(i, j);
      const double delta = (dot(t.eta2, c) + t.alpha2p) - (dot(t.eta1, c) + t.alpha1p);
      EXPECT_NEAR(m.at(i, j), oracle::disk_two_wave_oam(k, R, delta, 5), 2e-3);
    }
}

TEST(OamMap, ExtremumAtThreeQuarterRadiusIsBelowAQuarter) {
  // The largest disk-averaged <L> of the two-wave field at k R = 0.75,
  // maximized over the local phase difference.
  const double k = 1.0, R = 0.75;
  const double best = oracle::argmax([&](double d) { return oracle::disk_two_wave_oam(k, R, d, 5); }, 0.0, kPi);
  const double peak = oracle::disk_two_wave_oam(k, R, best, 5);
  EXPECT_NEAR(peak, 0.2446, 5e-4);
}

TEST(OamMap, WritesCsvAndMetadata) {
  ComplexField f(40, 40, 0.01);
  for (auto& v : f.values) v = 1.0;
  const OamMap m = oam_map(f, 0.05, 0.0, 2);
  const auto dir = std::filesystem::temp_directory_path() / "vlat_map_test";
  std::filesystem::create_directories(dir);
  const std::string csv = (dir / "m.csv").string();
  write_oam_map(m, csv);
  std::ifstream in(csv);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') ++rows;
  EXPECT_EQ(rows, m.ny);
  std::ifstream js(csv + ".json");
  const auto doc = nlohmann::json::parse(js);
  EXPECT_EQ(doc.at("l_range").get<int>(), 2);
  EXPECT_DOUBLE_EQ(doc.at("domain_radius_mm").get<double>(), 0.05);
  std::filesystem::remove_all(dir);
}

}  // namespace
