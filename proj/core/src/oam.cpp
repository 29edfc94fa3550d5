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

#include "vlat/oam.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "vlat/error.hpp"
#include "vlat/parallel.hpp"
#include "vlat/special.hpp"

namespace vlat {
namespace {

const cplx kI{0.0, 1.0};

double checked_norm(double k_perp_sigma, double delta_alpha) {
  if (!std::isfinite(k_perp_sigma) || k_perp_sigma < 0.0)
    throw InvalidArgument("OAM closed form: k_perp * sigma must be >= 0");
  const double n = test_wavefunction_norm(k_perp_sigma, delta_alpha);
  if (n < kDegenerateNorm)
    throw DegenerateStateError("test wavefunction has vanishing norm (k_perp sigma -> 0 with dAlpha = pi)");
  return n;
}

// Accumulated integrals over a grid. Partial sums are kept per outer index
// and reduced in order so the result does not depend on the thread count.
struct Sums {
  double norm = 0.0;
  cplx first{};      // int psi* d_phi psi
  cplx second{};     // int psi* d_phi^2 psi
  double by_parts = 0.0;

  Sums& operator+=(const Sums& o) {
    norm += o.norm;
    first += o.first;
    second += o.second;
    by_parts += o.by_parts;
    return *this;
  }
};

void accumulate(Sums& s, const FieldJet& j, double x, double y, double w) {
  const cplx dphi = x * j.dy - y * j.dx;
  const cplx dphi2 = x * x * j.dyy - 2.0 * x * y * j.dxy + y * y * j.dxx - x * j.dx - y * j.dy;
  const cplx c = std::conj(j.value);
  s.norm += w * std::norm(j.value);
  s.first += w * c * dphi;
  s.second += w * c * dphi2;
  s.by_parts += w * std::norm(dphi);
}

OamMoments finish(const Sums& s) {
  if (!(s.norm >= kDegenerateNorm)) throw DegenerateStateError("wavefunction norm vanishes on the quadrature grid");
  OamMoments m;
  m.norm = s.norm;
  const cplx ratio = kHandedness * (-kI) * s.first / s.norm;
  m.l_expect = ratio.real();
  m.imag_residue = std::abs(ratio.imag());
  m.l2_expect = (-s.second / s.norm).real();
  m.l2_by_parts = s.by_parts / s.norm;
  if (m.imag_residue > 1e-9)
    throw NumericalError("OAM quadrature: imaginary residue " + std::to_string(m.imag_residue) + " exceeds 1e-9");
  return m;
}

template <class Fn>
Sums reduce_rows(std::size_t rows, Fn&& row_sum) {
  std::vector<Sums> partial(rows);
  parallel_for(0, rows, [&](std::size_t i) { partial[i] = row_sum(i); });
  Sums total;
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace

double oam_closed_form(double k_perp_sigma, double delta_alpha) {
  const double n = checked_norm(k_perp_sigma, delta_alpha);
  const double x = 0.25 * k_perp_sigma * k_perp_sigma;
  return std::sin(delta_alpha) * x / n * std::exp(-x);
}

double oam_second_moment(double k_perp_sigma, double delta_alpha) {
  const double n = checked_norm(k_perp_sigma, delta_alpha);
  const double x = 0.25 * k_perp_sigma * k_perp_sigma;
  return x / n - std::cos(delta_alpha) * x * x / n * std::exp(-x);
}

double oam_bandwidth(double k_perp_sigma, double delta_alpha) {
  const double l = oam_closed_form(k_perp_sigma, delta_alpha);
  const double l2 = oam_second_moment(k_perp_sigma, delta_alpha);
  const double var = l2 - l * l;
  if (var < -1e-12) throw NumericalError("oam_bandwidth: negative variance " + std::to_string(var));
  return var > 0.0 ? std::sqrt(var) : 0.0;
}

OamResult oam_result(double k_perp_sigma, double delta_alpha) {
  OamResult r;
  r.norm = checked_norm(k_perp_sigma, delta_alpha);
  r.l_expect = oam_closed_form(k_perp_sigma, delta_alpha);
  r.l2_expect = oam_second_moment(k_perp_sigma, delta_alpha);
  r.chi = oam_bandwidth(k_perp_sigma, delta_alpha);
  return r;
}

double oam_anisotropic(double k_perp, double sigma_x, double sigma_y, double delta_alpha) {
  if (!(sigma_x > 0.0) || !(sigma_y > 0.0)) throw InvalidArgument("oam_anisotropic: coherence lengths must be > 0");
  const double s2 = sigma_x * sigma_x + sigma_y * sigma_y;
  const double n = checked_norm(k_perp * std::sqrt(0.5 * s2), delta_alpha);
  const double y = k_perp * k_perp * s2 / 8.0;
  return std::sin(delta_alpha) * y / n * std::exp(-y);
}

double oam_hankel_form(double k_perp, double sigma, double delta_alpha, std::size_t radial_nodes) {
  const double n = checked_norm(k_perp * sigma, delta_alpha);
  const Rule1D rule = composite_simpson(0.0, 6.0 * sigma, radial_nodes | 1u);
  double integral = 0.0;
  const double amp2 = 2.0 / (kPi * sigma * sigma);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double rho = rule.nodes[i];
    const double psi0_sq = amp2 * std::exp(-2.0 * rho * rho / (sigma * sigma));
    integral += rule.weights[i] * k_perp * rho * rho * psi0_sq * bessel_j(1, std::sqrt(2.0) * k_perp * rho);
  }
  return std::sqrt(2.0) * kPi * std::sin(delta_alpha) * integral / n;
}

SecondMomentIntegrals second_moment_integrals(double k_perp, double sigma) {
  const double x = 0.25 * k_perp * k_perp * sigma * sigma;
  const double base = kPi * k_perp * k_perp * std::pow(sigma, 4) / 4.0;
  return {base, base * std::exp(-x) * (1.0 - x), -base * std::exp(-x)};
}

double SecondMomentIntegrals::assemble(double sigma, double norm, double delta_alpha) const {
  return (power + std::cos(delta_alpha) * (hankel0 + hankel1)) / (kPi * sigma * sigma * norm);
}

OamMoments oam_quadrature(const GaussianSuperposition& psi, const QuadratureSpec& spec, Vec2 axis) {
  const double radius = psi.support_radius(spec.extent_widths) + norm(axis);
  const Rule1D radial = composite_simpson(0.0, radius, spec.radial_nodes | 1u);
  const Rule1D azimuth = periodic_trapezoid(spec.azimuthal_nodes);
  std::vector<double> cos_phi(azimuth.size()), sin_phi(azimuth.size());
  for (std::size_t j = 0; j < azimuth.size(); ++j) {
    cos_phi[j] = std::cos(azimuth.nodes[j]);
    sin_phi[j] = std::sin(azimuth.nodes[j]);
  }
  const Sums s = reduce_rows(radial.size(), [&](std::size_t i) {
    Sums row;
    const double rho = radial.nodes[i];
    if (rho == 0.0) return row;  // zero Jacobian
    for (std::size_t j = 0; j < azimuth.size(); ++j) {
      const double x = rho * cos_phi[j];
      const double y = rho * sin_phi[j];
      accumulate(row, psi.jet({axis.x + x, axis.y + y}), x, y, radial.weights[i] * azimuth.weights[j] * rho);
    }
    return row;
  });
  return finish(s);
}

OamMoments oam_quadrature_cartesian(const GaussianSuperposition& psi, const QuadratureSpec& spec, Vec2 axis) {
  const double half = psi.support_radius(spec.extent_widths) + norm(axis);
  const Rule1D rule = composite_simpson(-half, half, spec.cartesian_nodes | 1u);
  const Sums s = reduce_rows(rule.size(), [&](std::size_t iy) {
    Sums row;
    const double y = rule.nodes[iy];
    for (std::size_t ix = 0; ix < rule.size(); ++ix) {
      const double x = rule.nodes[ix];
      accumulate(row, psi.jet({axis.x + x, axis.y + y}), x, y, rule.weights[ix] * rule.weights[iy]);
    }
    return row;
  });
  return finish(s);
}

OamMoments oam_quadrature_oracle(const BeamParams& beam, const InterferometerConfig& cfg, WavefunctionKind kind,
                                 double shift, const QuadratureSpec& spec) {
  switch (kind) {
    case WavefunctionKind::test:
      return oam_quadrature(test_wavefunction(beam, cfg), spec);
    case WavefunctionKind::realspace_shift:
      return oam_quadrature(shifted_pair_momentum(beam, shift, cfg.delta_alpha()), spec);
  }
  throw InvalidArgument("oam_quadrature_oracle: unknown wavefunction kind");
}

GaussianSuperposition test_wavefunction_momentum(const BeamParams& beam, const InterferometerConfig& cfg) {
  cfg.validate();
  const double wx = 2.0 * beam.zeta_x();
  const double wy = 2.0 * beam.zeta_y();
  const double amp = std::sqrt(1.0 / (kTwoPi * beam.zeta_x() * beam.zeta_y())) / std::sqrt(2.0);
  const cplx phase{std::cos(cfg.delta_alpha()), std::sin(cfg.delta_alpha())};
  return GaussianSuperposition({
      {amp, {0.0, cfg.k_perp}, {}, wx, wy},
      {amp * phase, {cfg.k_perp, 0.0}, {}, wx, wy},
  });
}

Vec2 centroid(const GaussianSuperposition& psi, const QuadratureSpec& spec) {
  const double half = psi.support_radius(spec.extent_widths);
  const Rule1D rule = composite_simpson(-half, half, spec.cartesian_nodes | 1u);
  struct Row {
    double n = 0, mx = 0, my = 0;
  };
  std::vector<Row> rows(rule.size());
  parallel_for(0, rule.size(), [&](std::size_t iy) {
    Row r;
    const double y = rule.nodes[iy];
    for (std::size_t ix = 0; ix < rule.size(); ++ix) {
      const double x = rule.nodes[ix];
      const double w = rule.weights[ix] * rule.weights[iy] * std::norm(psi.value({x, y}));
      r.n += w;
      r.mx += w * x;
      r.my += w * y;
    }
    rows[iy] = r;
  });
  Row t;
  for (const auto& r : rows) {
    t.n += r.n;
    t.mx += r.mx;
    t.my += r.my;
  }
  if (!(t.n >= kDegenerateNorm)) throw DegenerateStateError("centroid: vanishing norm");
  return {t.mx / t.n, t.my / t.n};
}

namespace {

// int psi* (-i grad) psi and int |psi|^2 on a Cartesian grid.
struct GradientSums {
  double norm = 0.0;
  cplx px{}, py{};
};

GradientSums gradient_sums(const GaussianSuperposition& psi, const QuadratureSpec& spec) {
  const double half = psi.support_radius(spec.extent_widths);
  const Rule1D rule = composite_simpson(-half, half, spec.cartesian_nodes | 1u);
  std::vector<GradientSums> rows(rule.size());
  parallel_for(0, rule.size(), [&](std::size_t iy) {
    GradientSums r;
    const double y = rule.nodes[iy];
    for (std::size_t ix = 0; ix < rule.size(); ++ix) {
      const FieldJet j = psi.jet({rule.nodes[ix], y});
      const double w = rule.weights[ix] * rule.weights[iy];
      const cplx c = std::conj(j.value);
      r.norm += w * std::norm(j.value);
      r.px += w * c * (-kI) * j.dx;
      r.py += w * c * (-kI) * j.dy;
    }
    rows[iy] = r;
  });
  GradientSums t;
  for (const auto& r : rows) {
    t.norm += r.norm;
    t.px += r.px;
    t.py += r.py;
  }
  if (!(t.norm >= kDegenerateNorm)) throw DegenerateStateError("vanishing norm");
  return t;
}

}  // namespace

Vec2 mean_momentum(const GaussianSuperposition& psi, const QuadratureSpec& spec) {
  const GradientSums t = gradient_sums(psi, spec);
  return {t.px.real() / t.norm, t.py.real() / t.norm};
}

double delta_lz_translation(const BeamParams& beam, const InterferometerConfig& cfg, double x0, double y0,
                            const QuadratureSpec& spec) {
  if (!std::isfinite(x0) || !std::isfinite(y0)) throw InvalidArgument("delta_lz_translation: offsets must be finite");
  const GradientSums t = gradient_sums(test_wavefunction(beam, cfg), spec);
  // -i int psi* (x0 dy - y0 dx) psi = x0 int psi* (-i dy) psi - y0 int psi* (-i dx) psi
  const cplx v = (x0 * t.py - y0 * t.px) / t.norm;
  return kHandedness * v.real();
}

double oam_realspace_shift(double delta, double zeta, double delta_alpha, const QuadratureSpec& spec) {
  const BeamParams beam = BeamParams::from_momentum_spread(1.0, zeta, zeta);
  return oam_quadrature(shifted_pair_momentum(beam, delta, delta_alpha), spec).l_expect;
}

double oam_realspace_shift_closed_form(double delta, double zeta, double delta_alpha) {
  if (!std::isfinite(delta) || delta < 0.0) throw InvalidArgument("shift must be >= 0");
  if (!(zeta > 0.0)) throw InvalidArgument("momentum spread must be > 0");
  return oam_closed_form(2.0 * delta * zeta, delta_alpha);
}

}  // namespace vlat
