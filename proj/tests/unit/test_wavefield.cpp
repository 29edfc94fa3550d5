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

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>

#include "generators.hpp"
#include "vlat/error.hpp"
#include "vlat/special.hpp"
#include "vlat/wavefield.hpp"

namespace {

using namespace vlat;

TEST(Bessel, MatchesBoostIncludingNegativeOrdersAndArguments) {
  prop::for_all(300, 2, [](prop::Gen& g) {
    const int n = g.integer(-8, 8);
    const double x = g.uniform(-30, 30);
    EXPECT_NEAR(bessel_j(n, x), boost::math::cyl_bessel_j(n, x), 1e-13);
  });
}

TEST(BeamParams, CoherenceAndMomentumSpreadAreReciprocal) {
  const auto b = BeamParams::from_momentum_spread(2.0, 0.5, 0.25);
  EXPECT_DOUBLE_EQ(b.sigma_x(), 2.0);
  EXPECT_DOUBLE_EQ(b.sigma_y(), 4.0);
  EXPECT_FALSE(b.is_isotropic());
  EXPECT_NEAR(b.effective_sigma(), std::sqrt(10.0), 1e-15);
  EXPECT_TRUE(BeamParams::isotropic_coherence(1.0, 3.0).is_isotropic());
}

TEST(BeamParams, RejectsNonPositive) {
  EXPECT_THROW(BeamParams::from_coherence(1.0, 0.0, 1.0), InvalidArgument);
  EXPECT_THROW(BeamParams::from_momentum_spread(1.0, -1.0, 1.0), InvalidArgument);
  EXPECT_THROW(BeamParams::from_coherence(1.0, std::nan(""), 1.0), InvalidArgument);
}

TEST(InterferometerConfig, ValidatesAndReduces) {
  EXPECT_THROW((InterferometerConfig{-1.0, 0.0, 0.0}.validate()), InvalidArgument);
  EXPECT_THROW((InterferometerConfig{1.0, std::nan(""), 0.0}.validate()), InvalidArgument);
  const auto r = InterferometerConfig{1.0, 7.0, -7.0}.reduced();
  EXPECT_NEAR(r.alpha1, 7.0 - kTwoPi, 1e-15);
  EXPECT_NEAR(r.alpha2, -7.0 + kTwoPi, 1e-15);
  EXPECT_DOUBLE_EQ(wrap_phase(-kPi), kPi);
}

TEST(Wavefunctions, SuperpositionMatchesDirectEvaluation) {
  prop::for_all(50, 3, [](prop::Gen& g) {
    const auto beam = BeamParams::from_coherence(1.0, g.uniform(0.5, 2), g.uniform(0.5, 2));
    const InterferometerConfig cfg{g.uniform(0, 3), g.phase(), g.phase()};
    const Vec2 r{g.uniform(-2, 2), g.uniform(-2, 2)};
    EXPECT_LT(std::abs(test_wavefunction(beam, cfg).value(r) - eval_psi_t(r, beam, cfg)), 1e-14);
    EXPECT_LT(std::abs(composite_wavefunction(beam, cfg).value(r) - eval_psi1(r, beam, cfg)), 1e-14);
  });
}

TEST(Wavefunctions, EnvelopeIsUnitNormalized) {
  const auto beam = BeamParams::from_coherence(1.0, 1.5, 0.7);
  double sum = 0.0;
  const double h = 0.02;
  for (double x = -8; x <= 8; x += h)
    for (double y = -5; y <= 5; y += h) sum += std::norm(eval_psi0_real({x, y}, beam));
  EXPECT_NEAR(sum * h * h, 1.0, 1e-6);
}

TEST(Wavefunctions, TestStateNormHasClosedForm) {
  prop::for_all(100, 4, [](prop::Gen& g) {
    const double ks = g.uniform(0, 6), da = g.uniform(-kPi, kPi);
    EXPECT_NEAR(test_wavefunction_norm(ks, da), 1.0 + std::cos(da) * std::exp(-ks * ks / 4), 1e-14);
  });
  // Cancellation-free near dAlpha = pi.
  const double x = 1e-12;
  EXPECT_NEAR(test_wavefunction_norm(2 * std::sqrt(x), kPi) / x, 1.0, 1e-6);
}

TEST(GaussianSuperposition, JetMatchesFiniteDifferences) {
  prop::for_all(30, 5, [](prop::Gen& g) {
    const auto beam = BeamParams::from_coherence(1.0, g.uniform(0.5, 2), g.uniform(0.5, 2));
    const auto psi = test_wavefunction(beam, {g.uniform(0, 3), g.phase(), g.phase()});
    const Vec2 r{g.uniform(-1.5, 1.5), g.uniform(-1.5, 1.5)};
    const double h = 1e-4;
    const FieldJet j = psi.jet(r);
    auto v = [&](double dx, double dy) { return psi.value({r.x + dx, r.y + dy}); };
    EXPECT_LT(std::abs(j.dx - (v(h, 0) - v(-h, 0)) / (2 * h)), 1e-6);
    EXPECT_LT(std::abs(j.dy - (v(0, h) - v(0, -h)) / (2 * h)), 1e-6);
    EXPECT_LT(std::abs(j.dxx - (v(h, 0) - 2.0 * v(0, 0) + v(-h, 0)) / (h * h)), 1e-4);
    EXPECT_LT(std::abs(j.dyy - (v(0, h) - 2.0 * v(0, 0) + v(0, -h)) / (h * h)), 1e-4);
    EXPECT_LT(std::abs(j.dxy - (v(h, h) - v(h, -h) - v(-h, h) + v(-h, -h)) / (4 * h * h)), 1e-4);
  });
}

TEST(ShiftedPair, MomentumFormIsTheFourierTransform) {
  // Direct 2D transform (1/2pi) int psi(r) e^{+i k.r} of the real-space pair.
  // This orientation keeps <L> identical in both representations, which the
  // duality tests rely on.
  const auto beam = BeamParams::isotropic_coherence(1.0, 1.0);
  const double delta = 0.6, da = 0.9;
  const auto real = shifted_pair_wavefunction(beam, delta, da);
  const auto mom = shifted_pair_momentum(beam, delta, da);
  for (const Vec2 k : {Vec2{0.3, -0.2}, Vec2{1.1, 0.4}}) {
    SCOPED_TRACE(k.x);
    cplx sum{};
    const double h = 0.04;
    for (double x = -7; x <= 7; x += h)
      for (double y = -7; y <= 7; y += h) sum += real.value({x, y}) * std::exp(cplx(0, k.x * x + k.y * y));
    sum *= h * h / kTwoPi;
    EXPECT_LT(std::abs(sum - mom.value(k)), 1e-6);
  }
}

TEST(Prism, RefractionAndPeriod) {
  const double gamma = prism_refraction(1.92, kAluminiumSld, 5.0 * kPi / 180.0);
  EXPECT_NEAR(gamma, 1.92 * 1.92 * kAluminiumSld / kTwoPi * std::tan(5.0 * kPi / 180.0), 1e-22);
  EXPECT_NEAR(lattice_period(kTwoPi / 1.92, gamma), 1.92 / gamma, 1e-6);
  EXPECT_THROW(prism_refraction(1.92, kAluminiumSld, kPi / 2), InvalidArgument);
  EXPECT_THROW(prism_refraction(1.92, kAluminiumSld, -0.1), InvalidArgument);
  EXPECT_THROW(lattice_period(1.0, 0.0), InvalidArgument);
}

}  // namespace
