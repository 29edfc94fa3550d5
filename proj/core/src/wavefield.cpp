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

#include "vlat/wavefield.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vlat/error.hpp"

namespace vlat {
namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

const cplx kI{0.0, 1.0};

// exp(i theta) without going through std::exp(complex).
cplx phasor(double theta) { return {std::cos(theta), std::sin(theta)}; }

}  // namespace

BeamParams::BeamParams(double k_z, double zeta_x, double zeta_y)
    : k_z_(k_z), zeta_x_(zeta_x), zeta_y_(zeta_y), sigma_x_(1.0 / zeta_x), sigma_y_(1.0 / zeta_y) {
  if (!positive_finite(k_z) || !positive_finite(zeta_x) || !positive_finite(zeta_y))
    throw InvalidArgument("BeamParams: k_z and momentum spreads must be positive and finite");
}

BeamParams BeamParams::from_momentum_spread(double k_z, double zeta_x, double zeta_y) {
  return BeamParams(k_z, zeta_x, zeta_y);
}

BeamParams BeamParams::from_coherence(double k_z, double sigma_x, double sigma_y) {
  if (!positive_finite(sigma_x) || !positive_finite(sigma_y))
    throw InvalidArgument("BeamParams: coherence lengths must be positive and finite");
  return BeamParams(k_z, 1.0 / sigma_x, 1.0 / sigma_y);
}

double BeamParams::effective_sigma() const {
  if (is_isotropic()) return sigma_x_;
  return std::sqrt(0.5 * (sigma_x_ * sigma_x_ + sigma_y_ * sigma_y_));
}

void InterferometerConfig::validate() const {
  if (!std::isfinite(k_perp) || k_perp < 0.0) throw InvalidArgument("InterferometerConfig: k_perp must be >= 0");
  if (!std::isfinite(alpha1) || !std::isfinite(alpha2))
    throw InvalidArgument("InterferometerConfig: loop phases must be finite");
}

ComplexField::ComplexField(std::size_t w, std::size_t h, double pitch_, Vec2 origin_)
    : width(w), height(h), pitch(pitch_), origin(origin_), values(w * h) {
  if (!positive_finite(pitch)) throw InvalidArgument("ComplexField: pitch must be positive");
}

cplx eval_psi0_real(Vec2 r, const BeamParams& beam) {
  const double sx = beam.sigma_x();
  const double sy = beam.sigma_y();
  const double amp = std::sqrt(2.0 / (kPi * sx * sy));
  const double u = r.x / sx;
  const double v = r.y / sy;
  return {amp * std::exp(-(u * u + v * v)), 0.0};
}

cplx eval_psi_t(Vec2 r, const BeamParams& beam, const InterferometerConfig& cfg) {
  const double k = cfg.k_perp;
  return eval_psi0_real(r, beam) * (phasor(k * r.y) + phasor(cfg.delta_alpha() + k * r.x)) / std::sqrt(2.0);
}

cplx eval_psi1(Vec2 r, const BeamParams& beam, const InterferometerConfig& cfg) {
  const double k = cfg.k_perp;
  return eval_psi0_real(r, beam) * (1.0 + phasor(cfg.alpha1 + k * r.y) + phasor(cfg.alpha2 + k * r.x)) /
         std::sqrt(3.0);
}

cplx eval_psi0_momentum(Vec2 k, const BeamParams& beam) {
  const double zx = beam.zeta_x();
  const double zy = beam.zeta_y();
  const double amp = std::sqrt(1.0 / (kTwoPi * zx * zy));
  return {amp * std::exp(-(k.x * k.x / (4.0 * zx * zx) + k.y * k.y / (4.0 * zy * zy))), 0.0};
}

double test_wavefunction_norm(double k_perp_sigma, double delta_alpha) {
  // 1 + cos(a) e^{-x} = (1 - e^{-x}) + (1 + cos a) e^{-x}; both terms are
  // computed to full relative precision.
  const double x = 0.25 * k_perp_sigma * k_perp_sigma;
  const double half_cos = std::cos(0.5 * delta_alpha);
  return -std::expm1(-x) + 2.0 * half_cos * half_cos * std::exp(-x);
}

GaussianSuperposition::GaussianSuperposition(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (!positive_finite(t.width_x) || !positive_finite(t.width_y))
      throw InvalidArgument("GaussianSuperposition: envelope widths must be positive");
}

cplx GaussianSuperposition::value(Vec2 r) const {
  cplx sum{};
  for (const auto& t : terms_) {
    const double u = (r.x - t.center.x) / t.width_x;
    const double v = (r.y - t.center.y) / t.width_y;
    sum += t.coeff * std::exp(-(u * u + v * v)) * phasor(dot(t.wavevector, r));
  }
  return sum;
}

FieldJet GaussianSuperposition::jet(Vec2 r) const {
  FieldJet out;
  for (const auto& t : terms_) {
    const double dxr = r.x - t.center.x;
    const double dyr = r.y - t.center.y;
    const double ax = 1.0 / (t.width_x * t.width_x);
    const double ay = 1.0 / (t.width_y * t.width_y);
    const double g = std::exp(-(dxr * dxr * ax + dyr * dyr * ay));
    const double gx = -2.0 * dxr * ax * g;
    const double gy = -2.0 * dyr * ay * g;
    const double gxx = (4.0 * dxr * dxr * ax * ax - 2.0 * ax) * g;
    const double gyy = (4.0 * dyr * dyr * ay * ay - 2.0 * ay) * g;
    const double gxy = 4.0 * dxr * dyr * ax * ay * g;

    const cplx p = t.coeff * phasor(dot(t.wavevector, r));
    const double qx = t.wavevector.x;
    const double qy = t.wavevector.y;
    const cplx px = kI * qx * p;
    const cplx py = kI * qy * p;

    out.value += g * p;
    out.dx += gx * p + g * px;
    out.dy += gy * p + g * py;
    out.dxx += gxx * p + 2.0 * gx * px - g * qx * qx * p;
    out.dyy += gyy * p + 2.0 * gy * py - g * qy * qy * p;
    out.dxy += gxy * p + gx * py + gy * px - g * qx * qy * p;
  }
  return out;
}

double GaussianSuperposition::max_width() const {
  double w = 0.0;
  for (const auto& t : terms_) w = std::max({w, t.width_x, t.width_y});
  return w;
}

double GaussianSuperposition::support_radius(double widths) const {
  double r = 0.0;
  for (const auto& t : terms_) r = std::max(r, norm(t.center) + widths * std::max(t.width_x, t.width_y));
  return r;
}

namespace {

GaussianSuperposition::Term envelope_term(cplx coeff, double amp, Vec2 center, Vec2 q, double wx, double wy) {
  return {coeff * amp, center, q, wx, wy};
}

}  // namespace

GaussianSuperposition test_wavefunction(const BeamParams& beam, const InterferometerConfig& cfg) {
  cfg.validate();
  const double sx = beam.sigma_x();
  const double sy = beam.sigma_y();
  const double amp = std::sqrt(2.0 / (kPi * sx * sy)) / std::sqrt(2.0);
  const double k = cfg.k_perp;
  return GaussianSuperposition({
      envelope_term(1.0, amp, {}, {0.0, k}, sx, sy),
      envelope_term(phasor(cfg.delta_alpha()), amp, {}, {k, 0.0}, sx, sy),
  });
}

GaussianSuperposition composite_wavefunction(const BeamParams& beam, const InterferometerConfig& cfg) {
  cfg.validate();
  const double sx = beam.sigma_x();
  const double sy = beam.sigma_y();
  const double amp = std::sqrt(2.0 / (kPi * sx * sy)) / std::sqrt(3.0);
  const double k = cfg.k_perp;
  return GaussianSuperposition({
      envelope_term(1.0, amp, {}, {}, sx, sy),
      envelope_term(phasor(cfg.alpha1), amp, {}, {0.0, k}, sx, sy),
      envelope_term(phasor(cfg.alpha2), amp, {}, {k, 0.0}, sx, sy),
  });
}

GaussianSuperposition shifted_pair_wavefunction(const BeamParams& beam, double delta, double delta_alpha) {
  if (!std::isfinite(delta) || delta < 0.0) throw InvalidArgument("shifted pair: delta must be >= 0");
  const double sx = beam.sigma_x();
  const double sy = beam.sigma_y();
  const double amp = std::sqrt(2.0 / (kPi * sx * sy)) / std::sqrt(2.0);
  return GaussianSuperposition({
      envelope_term(1.0, amp, {0.0, delta}, {}, sx, sy),
      envelope_term(phasor(delta_alpha), amp, {delta, 0.0}, {}, sx, sy),
  });
}

GaussianSuperposition shifted_pair_momentum(const BeamParams& beam, double delta, double delta_alpha) {
  if (!std::isfinite(delta) || delta < 0.0) throw InvalidArgument("shifted pair: delta must be >= 0");
  // psi0(k) = sqrt(1/(2 pi zx zy)) exp(-kx^2/(2 zx)^2 - ky^2/(2 zy)^2)
  const double wx = 2.0 * beam.zeta_x();
  const double wy = 2.0 * beam.zeta_y();
  const double amp = std::sqrt(1.0 / (kTwoPi * beam.zeta_x() * beam.zeta_y())) / std::sqrt(2.0);
  return GaussianSuperposition({
      envelope_term(1.0, amp, {}, {0.0, delta}, wx, wy),
      envelope_term(phasor(delta_alpha), amp, {}, {delta, 0.0}, wx, wy),
  });
}

double prism_refraction(double wavelength, double sld, double wedge_angle) {
  if (!positive_finite(wavelength)) throw InvalidArgument("prism_refraction: wavelength must be positive");
  if (!std::isfinite(sld)) throw InvalidArgument("prism_refraction: sld must be finite");
  if (!std::isfinite(wedge_angle) || wedge_angle < 0.0 || wedge_angle >= kPi / 2.0)
    throw InvalidArgument("prism_refraction: wedge angle must lie in [0, pi/2)");
  return wavelength * wavelength * sld / kTwoPi * std::tan(wedge_angle);
}

double lattice_period(double k_z, double refraction_angle) {
  if (!positive_finite(k_z) || !positive_finite(refraction_angle))
    throw InvalidArgument("lattice_period: k_z and refraction angle must be positive");
  return kTwoPi / (k_z * refraction_angle);
}

}  // namespace vlat
