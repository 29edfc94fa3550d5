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

#include "vlat/modes.hpp"

#include <cmath>
#include <numeric>

#include "vlat/error.hpp"
#include "vlat/oam.hpp"
#include "vlat/special.hpp"

namespace vlat {
namespace {

const cplx kI{0.0, 1.0};

cplx phasor(double t) { return {std::cos(t), std::sin(t)}; }

// i^n for any integer n.
cplx i_power(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_uniform(const std::vector<double>& phi) {
  const std::size_t n = phi.size();
  if (n < 2) throw InvalidArgument("aft: need at least two angular samples");
  const double step = kTwoPi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j)
    if (std::abs(phi[j] - phi[0] - static_cast<double>(j) * step) > 1e-9 * kTwoPi)
      throw InvalidArgument("aft: angular grid must be uniform over one full turn");
}

double isotropic_sigma(const BeamParams& beam) {
  if (!beam.is_isotropic()) throw InvalidArgument("mode amplitudes require an isotropic beam");
  return beam.sigma_x();
}

}  // namespace

PolarSamples sample_polar(const std::function<cplx(Vec2)>& f, Rule1D radial, std::size_t n_phi) {
  PolarSamples s;
  s.phi.resize(n_phi);
  for (std::size_t j = 0; j < n_phi; ++j) s.phi[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(n_phi);
  s.values.resize(radial.size() * n_phi);
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double rho = radial.nodes[i];
    for (std::size_t j = 0; j < n_phi; ++j)
      s.values[i * n_phi + j] = f({rho * std::cos(s.phi[j]), rho * std::sin(s.phi[j])});
  }
  s.radial = std::move(radial);
  return s;
}

std::vector<cplx> aft(const PolarSamples& field, int l) {
  check_uniform(field.phi);
  const std::size_t n = field.n_phi();
  std::vector<cplx> kernel(n);
  for (std::size_t j = 0; j < n; ++j) kernel[j] = phasor(static_cast<double>(l) * field.phi[j]);
  const double scale = kTwoPi / static_cast<double>(n) / std::sqrt(kTwoPi);
  std::vector<cplx> out(field.n_rho());
  for (std::size_t i = 0; i < field.n_rho(); ++i) {
    cplx acc{};
    for (std::size_t j = 0; j < n; ++j) acc += field.at(i, j) * kernel[j];
    out[i] = scale * acc;
  }
  return out;
}

double ModeSpectrum::mean_l() const {
  double m = 0.0;
  for (int l = l_min; l <= l_max; ++l) m += l * probability(l);
  return m;
}

ModeSpectrum mode_spectrum(const PolarSamples& field, int l_max) {
  if (l_max < 0) throw InvalidArgument("mode_spectrum: l_max must be >= 0");
  if (static_cast<std::size_t>(2 * l_max + 1) > field.n_phi())
    throw InvalidArgument("mode_spectrum: angular grid too coarse for the requested mode range");
  ModeSpectrum s;
  s.l_min = -l_max;
  s.l_max = l_max;
  s.rho = field.radial.nodes;
  for (int l = -l_max; l <= l_max; ++l) {
    s.amplitudes.push_back(aft(field, l));
    double w = 0.0;
    const auto& a = s.amplitudes.back();
    for (std::size_t i = 0; i < a.size(); ++i) w += field.radial.weights[i] * field.radial.nodes[i] * std::norm(a[i]);
    s.weights.push_back(w);
  }
  s.probabilities = mode_probabilities(s);
  return s;
}

std::vector<double> mode_probabilities(const ModeSpectrum& spectrum) {
  const double total = std::accumulate(spectrum.weights.begin(), spectrum.weights.end(), 0.0);
  if (!(total > 0.0)) throw DegenerateStateError("mode_probabilities: field has no weight on the sampled domain");
  std::vector<double> p(spectrum.weights.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = spectrum.weights[k] / total;
  return p;
}

cplx inverse_aft(const ModeSpectrum& spectrum, std::size_t rho_index, double phi) {
  cplx acc{};
  for (int l = spectrum.l_min; l <= spectrum.l_max; ++l)
    acc += spectrum.amplitude(l).at(rho_index) * phasor(-static_cast<double>(l) * phi);
  return acc / std::sqrt(kTwoPi);
}

cplx jacobi_anger_amplitude(int l, double rho, const BeamParams& beam, const InterferometerConfig& cfg) {
  const double sigma = isotropic_sigma(beam);
  const double sign = (l % 2 == 0) ? 1.0 : -1.0;
  const double radial = 2.0 / sigma * std::exp(-rho * rho / (sigma * sigma)) * bessel_j(l, cfg.k_perp * rho);
  return sign * radial * (1.0 + i_power(-l) * phasor(cfg.delta_alpha()));
}

cplx first_order_mode(int l, double rho, const BeamParams& beam, const InterferometerConfig& cfg) {
  const double sigma = isotropic_sigma(beam);
  const double g = std::exp(-rho * rho / (sigma * sigma));
  const cplx e = phasor(cfg.delta_alpha());
  switch (l) {
    case 0: return 2.0 / sigma * g * (1.0 + e);
    case 1: return -(cfg.k_perp * rho / sigma) * g * (1.0 - kI * e);
    case -1: return (cfg.k_perp * rho / sigma) * g * (1.0 + kI * e);
    default: throw InvalidArgument("first_order_mode: l must be -1, 0 or 1");
  }
}

FirstOrderProbabilities first_order_probabilities(double k_perp_sigma, double delta_alpha) {
  const double c = k_perp_sigma * k_perp_sigma / 8.0;
  const double w0 = 2.0 + 2.0 * std::cos(delta_alpha);
  const double wp = c * (2.0 + 2.0 * std::sin(delta_alpha));
  const double wm = c * (2.0 - 2.0 * std::sin(delta_alpha));
  const double total = w0 + wp + wm;
  if (!(total > kDegenerateNorm)) throw DegenerateStateError("first-order modes carry no weight");
  return {wm / total, w0 / total, wp / total};
}

}  // namespace vlat
