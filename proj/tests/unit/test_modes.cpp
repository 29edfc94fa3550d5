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
#include <numeric>

#include "generators.hpp"
#include "oracles.hpp"
#include "vlat/error.hpp"
#include "vlat/modes.hpp"
#include "vlat/oam.hpp"

namespace {

using namespace vlat;

PolarSamples sample_test_state(double k, double sigma, double da, std::size_t n_rho = 601, std::size_t n_phi = 128) {
  const auto beam = BeamParams::isotropic_coherence(1.0, sigma);
  const auto cfg = InterferometerConfig::with_phase_difference(k, da);
  return sample_polar([&](Vec2 r) { return eval_psi_t(r, beam, cfg); }, composite_simpson(0.0, 6.0 * sigma, n_rho),
                      n_phi);
}

TEST(Aft, IsolatesASingleHarmonic) {
  prop::for_all(20, 21, [](prop::Gen& g) {
    const int m = g.integer(-6, 6);
    const auto field = sample_polar(
        [&](Vec2 r) {
          const double rho = std::hypot(r.x, r.y);
          return rho * std::exp(-rho * rho) * std::exp(cplx(0, -m * std::atan2(r.y, r.x)));
        },
        composite_simpson(0.0, 3.0, 31), 64);
    for (int l = -8; l <= 8; ++l) {
      const auto a = aft(field, l);
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double rho = field.radial.nodes[i];
        const double expect = l == m ? std::sqrt(kTwoPi) * rho * std::exp(-rho * rho) : 0.0;
        EXPECT_NEAR(std::abs(a[i]), expect, 1e-12);
      }
    }
  });
}

TEST(Aft, RejectsNonUniformAngles) {
  PolarSamples s = sample_polar([](Vec2) { return cplx{1.0, 0.0}; }, composite_simpson(0, 1, 3), 8);
  s.phi[3] += 0.01;
  EXPECT_THROW(aft(s, 0), InvalidArgument);
}

TEST(ModeSpectrum, ExactHarmonicsMatchBesselOracle) {
  const double k = 1.7, sigma = 1.2, da = 0.8;
  const auto field = sample_test_state(k, sigma, da, 41, 128);
  for (int l = -4; l <= 4; ++l) {
    const auto a = aft(field, l);
    for (std::size_t i = 0; i < a.size(); ++i)
      EXPECT_LT(std::abs(a[i] - oracle::two_wave_harmonic(l, field.radial.nodes[i], k, sigma, da)), 1e-12);
  }
}

TEST(ModeSpectrum, PrintedJacobiAngerFormDiffersByConstant) {
  // The printed amplitude omits the sqrt(2 pi) of the transform and the
  // 1/sqrt2 of the state; the ratio to the exact harmonic is 1/sqrt2.
  prop::for_all(50, 22, [](prop::Gen& g) {
    const double sigma = g.uniform(0.5, 2.0);
    const auto beam = BeamParams::isotropic_coherence(1.0, sigma);
    const InterferometerConfig cfg{g.uniform(0.1, 3.0), g.phase(), g.phase()};
    const int l = g.integer(-5, 5);
    const double rho = g.uniform(0.05, 2.0 * sigma);
    const cplx printed = jacobi_anger_amplitude(l, rho, beam, cfg);
    const cplx exact = oracle::two_wave_harmonic(l, rho, cfg.k_perp, sigma, cfg.delta_alpha());
    if (std::abs(printed) < 1e-9) return;
    const cplx ratio = exact / printed;
    EXPECT_NEAR(ratio.real(), 1.0 / std::sqrt(2.0), 1e-10);
    EXPECT_NEAR(ratio.imag(), 0.0, 1e-10);
  });
}

TEST(ModeSpectrum, ProbabilitiesSumToOneAndMeanIsTheClosedForm) {
  for (double da : {kPi / 2, -1.0, 2.5}) {
    const auto spec = mode_spectrum(sample_test_state(2.0, 1.0, da), 40);
    const double total = std::accumulate(spec.probabilities.begin(), spec.probabilities.end(), 0.0);
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_NEAR(spec.mean_l(), oam_closed_form(2.0, da), 1e-7) << da;
  }
}

TEST(ModeSpectrum, OppositePhaseSuppressesTheZeroMode) {
  const auto spec = mode_spectrum(sample_test_state(0.5, 1.0, kPi), 10);
  for (const cplx& a : spec.amplitude(0)) EXPECT_LT(std::abs(a), 1e-14);
  EXPECT_NEAR(spec.probability(1), spec.probability(-1), 1e-14);
  EXPECT_NEAR(spec.mean_l(), 0.0, 1e-14);
  const auto beam = BeamParams::isotropic_coherence(1.0, 1.0);
  EXPECT_LT(std::abs(jacobi_anger_amplitude(0, 0.4, beam, InterferometerConfig::with_phase_difference(0.5, kPi))),
            1e-15);
}

TEST(ModeSpectrum, InverseTransformRebuildsTheField) {
  const auto field = sample_test_state(1.3, 1.0, 0.4, 61, 64);
  const auto spec = mode_spectrum(field, 31);
  for (std::size_t i : {5u, 20u, 40u})
    for (std::size_t j : {0u, 7u, 33u}) EXPECT_LT(std::abs(inverse_aft(spec, i, field.phi[j]) - field.at(i, j)), 1e-12);
}

TEST(ModeSpectrum, RejectsBadRanges) {
  const auto field = sample_test_state(1.0, 1.0, 0.0, 11, 16);
  EXPECT_THROW(mode_spectrum(field, -1), InvalidArgument);
  EXPECT_THROW(mode_spectrum(field, 8), InvalidArgument);
  const auto zero = sample_polar([](Vec2) { return cplx{}; }, composite_simpson(0, 1, 5), 8);
  EXPECT_THROW(mode_spectrum(zero, 2), DegenerateStateError);
}

TEST(FirstOrder, DipoleModesWithinTenPercentUpToThreeQuarters) {
  prop::for_all(300, 23, [](prop::Gen& g) {
    const double sigma = g.uniform(0.5, 3.0);
    const auto beam = BeamParams::isotropic_coherence(1.0, sigma);
    const double k = g.uniform(0.1, 2.0);
    const auto cfg = InterferometerConfig::with_phase_difference(k, g.phase(0.05));
    const double rho = g.uniform(1e-3, 0.75) / k;
    for (int l : {-1, 1}) {
      const cplx exact = jacobi_anger_amplitude(l, rho, beam, cfg);
      if (std::abs(exact) < 1e-12) continue;
      EXPECT_LT(std::abs(first_order_mode(l, rho, beam, cfg) - exact) / std::abs(exact), 0.1);
    }
  });
}

TEST(FirstOrder, MonopoleErrorIsTheBesselDeficit) {
  // Relative error of the l = 0 term is 1 - J0(k rho): 15.7% at k rho = 0.75.
  const auto beam = BeamParams::isotropic_coherence(1.0, 1.0);
  const auto cfg = InterferometerConfig::with_phase_difference(1.0, 0.3);
  const cplx exact = jacobi_anger_amplitude(0, 0.75, beam, cfg);
  const double err = std::abs(first_order_mode(0, 0.75, beam, cfg) - exact) / std::abs(exact);
  EXPECT_NEAR(err, 1.0 / std::cyl_bessel_j(0.0, 0.75) - 1.0, 1e-12);
  EXPECT_THROW(first_order_mode(2, 0.1, beam, cfg), InvalidArgument);
}

TEST(FirstOrder, ProbabilitiesReproduceSmallShiftLimit) {
  prop::for_all(100, 24, [](prop::Gen& g) {
    const double ks = g.log_uniform(1e-4, 1e-2), da = g.phase(0.1);
    const auto p = first_order_probabilities(ks, da);
    EXPECT_NEAR(p.minus + p.zero + p.plus, 1.0, 1e-14);
    const double mean = p.plus - p.minus;
    EXPECT_NEAR(mean / oam_closed_form(ks, da), 1.0, 1e-3);
  });
  EXPECT_THROW(first_order_probabilities(0.0, kPi), DegenerateStateError);
}

}  // namespace
