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
#include <vector>

#include "vlat/types.hpp"

namespace vlat {

/// Transverse Gaussian beam: momentum spreads zeta and coherence lengths
/// sigma = 1/zeta per axis, plus the longitudinal wavenumber. The
/// longitudinal profile is factored out; every quantity here is 2D.
class BeamParams {
 public:
  static BeamParams from_momentum_spread(double k_z, double zeta_x, double zeta_y);
  static BeamParams from_coherence(double k_z, double sigma_x, double sigma_y);
  static BeamParams isotropic_coherence(double k_z, double sigma) { return from_coherence(k_z, sigma, sigma); }

  double k_z() const { return k_z_; }
  double zeta_x() const { return zeta_x_; }
  double zeta_y() const { return zeta_y_; }
  double sigma_x() const { return sigma_x_; }
  double sigma_y() const { return sigma_y_; }
  bool is_isotropic() const { return zeta_x_ == zeta_y_; }
  /// sqrt((sigma_x^2 + sigma_y^2) / 2); equals sigma for an isotropic beam.
  double effective_sigma() const;

 private:
  BeamParams(double k_z, double zeta_x, double zeta_y);

  double k_z_;
  double zeta_x_;
  double zeta_y_;
  double sigma_x_;
  double sigma_y_;
};

/// Prism-induced transverse momentum shift and the two loop phases.
struct InterferometerConfig {
  double k_perp = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;

  static InterferometerConfig with_phase_difference(double k_perp, double delta_alpha) {
    return {k_perp, 0.0, delta_alpha};
  }

  double delta_alpha() const { return alpha2 - alpha1; }
  /// Copy with both loop phases reduced to (-pi, pi].
  InterferometerConfig reduced() const { return {k_perp, wrap_phase(alpha1), wrap_phase(alpha2)}; }
  /// Throws InvalidArgument unless k_perp >= 0 and every field is finite.
  void validate() const;
};

/// Complex raster sampled at pixel centers origin + (i + 1/2, j + 1/2) * pitch.
struct ComplexField {
  std::size_t width = 0;
  std::size_t height = 0;
  double pitch = 1.0;
  Vec2 origin{};
  std::vector<cplx> values;

  ComplexField() = default;
  ComplexField(std::size_t w, std::size_t h, double pitch, Vec2 origin = {});

  cplx& at(std::size_t i, std::size_t j) { return values[j * width + i]; }
  const cplx& at(std::size_t i, std::size_t j) const { return values[j * width + i]; }
  Vec2 pixel_center(std::size_t i, std::size_t j) const {
    return {origin.x + (static_cast<double>(i) + 0.5) * pitch, origin.y + (static_cast<double>(j) + 0.5) * pitch};
  }
};

// Direct evaluation of the beam wavefunctions at a transverse point.

/// Normalized transverse envelope sqrt(2/(pi sx sy)) exp(-x^2/sx^2 - y^2/sy^2).
cplx eval_psi0_real(Vec2 r, const BeamParams& beam);
/// Test wavefunction (psi0 / sqrt 2) (e^{i k y} + e^{i dAlpha} e^{i k x}).
cplx eval_psi_t(Vec2 r, const BeamParams& beam, const InterferometerConfig& cfg);
/// Composite wavefunction (psi0 / sqrt 3) (1 + e^{i a1} e^{i k y} + e^{i a2} e^{i k x}).
cplx eval_psi1(Vec2 r, const BeamParams& beam, const InterferometerConfig& cfg);
/// Momentum-space input envelope sqrt(1/(2 pi zx zy)) exp(-kx^2/(4 zx^2) - ky^2/(4 zy^2)).
cplx eval_psi0_momentum(Vec2 k, const BeamParams& beam);

/// Closed-form norm of the test wavefunction: 1 + cos(dAlpha) exp(-k^2 sigma^2 / 4),
/// computed without cancellation near dAlpha = pi.
double test_wavefunction_norm(double k_perp_sigma, double delta_alpha);

/// Value and first/second Cartesian derivatives at a point.
struct FieldJet {
  cplx value{};
  cplx dx{}, dy{};
  cplx dxx{}, dxy{}, dyy{};
};

/// Superposition of Gaussian envelopes carrying plane-wave phases:
///   sum_j c_j A_j exp(-(x-cx_j)^2/wx_j^2 - (y-cy_j)^2/wy_j^2) exp(i q_j . r).
/// Every wavefunction in the toolkit (real or momentum space) has this form,
/// so one jet evaluator serves all quadrature oracles.
class GaussianSuperposition {
 public:
  struct Term {
    cplx coeff{1.0, 0.0};
    Vec2 center{};
    Vec2 wavevector{};
    double width_x = 1.0;
    double width_y = 1.0;
  };

  explicit GaussianSuperposition(std::vector<Term> terms);

  cplx value(Vec2 r) const;
  FieldJet jet(Vec2 r) const;
  /// Radius around the origin outside which every envelope is below
  /// exp(-widths^2) of its peak.
  double support_radius(double widths) const;
  /// Largest envelope width over all terms.
  double max_width() const;
  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::vector<Term> terms_;
};

GaussianSuperposition test_wavefunction(const BeamParams& beam, const InterferometerConfig& cfg);
GaussianSuperposition composite_wavefunction(const BeamParams& beam, const InterferometerConfig& cfg);
/// Two copies of the envelope displaced by delta along y and x (real space).
GaussianSuperposition shifted_pair_wavefunction(const BeamParams& beam, double delta, double delta_alpha);
/// Fourier dual of shifted_pair_wavefunction, expressed in momentum space:
/// (psi0(k) / sqrt 2) (e^{i delta k_y} + e^{i dAlpha} e^{i delta k_x}).
GaussianSuperposition shifted_pair_momentum(const BeamParams& beam, double delta, double delta_alpha);

/// Coherent scattering-length density of aluminium in 1/Angstrom^2
/// (b_c = 3.449 fm, 2.699 g/cm^3).
inline constexpr double kAluminiumSld = 2.078e-6;

/// Thin-wedge refraction angle (lambda^2 sld / 2 pi) tan(wedge). Lengths in
/// consistent units (Angstrom and 1/Angstrom^2). Throws for wedge angles
/// outside [0, pi/2).
double prism_refraction(double wavelength, double sld, double wedge_angle);

/// Moire lattice period 2 pi / (k_z gamma) for refraction angle gamma.
double lattice_period(double k_z, double refraction_angle);

}  // namespace vlat
