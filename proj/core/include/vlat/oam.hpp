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

#include "vlat/quadrature.hpp"
#include "vlat/types.hpp"
#include "vlat/wavefield.hpp"

namespace vlat {

/// Orientation convention for every OAM value the toolkit reports.
///
/// Mode index l labels the harmonic e^{-i l phi} (the kernel of the azimuthal
/// Fourier transform is e^{+i l phi}). The matching angular-momentum operator
/// is L_z = +i d/dphi = kHandedness * (-i d/dphi). With this orientation the
/// closed forms, the mode sums sum(l A^l) and the domain-averaged maps all
/// agree in sign.
inline constexpr double kHandedness = -1.0;

/// First and second OAM moments of a state, in units of hbar.
struct OamResult {
  double l_expect = 0.0;
  double l2_expect = 0.0;
  double chi = 0.0;  // sqrt(l2 - l^2)
  double norm = 0.0;
};

/// Norm below which a state is treated as degenerate.
inline constexpr double kDegenerateNorm = 1e-12;

/// <L_z> of the test wavefunction: sin(dAlpha) (x / N) e^{-x}, x = (k sigma)^2 / 4.
/// Throws DegenerateStateError when N vanishes.
double oam_closed_form(double k_perp_sigma, double delta_alpha);

/// <L_z^2> = x / N - cos(dAlpha) x^2 e^{-x} / N.
double oam_second_moment(double k_perp_sigma, double delta_alpha);

/// Bandwidth sqrt(<L_z^2> - <L_z>^2); round-off below -1e-12 is an error.
double oam_bandwidth(double k_perp_sigma, double delta_alpha);

OamResult oam_result(double k_perp_sigma, double delta_alpha);

/// Anisotropic-envelope <L_z>:
/// sin(dAlpha) k^2 (sx^2 + sy^2) / (8 N) exp(-k^2 (sx^2 + sy^2) / 8),
/// with N evaluated at sigma^2 = (sx^2 + sy^2) / 2.
double oam_anisotropic(double k_perp, double sigma_x, double sigma_y, double delta_alpha);

/// The single radial Bessel integral to which the azimuthal integration
/// reduces <L_z>: sqrt2 pi sin(dAlpha) int k rho^2 |psi0|^2 J1(sqrt2 k rho) drho / N,
/// evaluated numerically (isotropic envelope).
double oam_hankel_form(double k_perp, double sigma, double delta_alpha, std::size_t radial_nodes = 4001);

/// The three radial integrals of the second-moment derivation, closed form:
///   power   = int 2 pi k^2 rho^3 e^{-2 rho^2/sigma^2} drho
///   hankel0 = 2 pi int k^2 rho^3 e^{-2 rho^2/sigma^2} J0(sqrt2 k rho) drho
///   hankel1 = -sqrt8 pi int k rho^2 e^{-2 rho^2/sigma^2} J1(sqrt2 k rho) drho
struct SecondMomentIntegrals {
  double power = 0.0;
  double hankel0 = 0.0;
  double hankel1 = 0.0;

  /// (power + cos(dAlpha) (hankel0 + hankel1)) / (pi sigma^2 N)
  double assemble(double sigma, double norm, double delta_alpha) const;
};
SecondMomentIntegrals second_moment_integrals(double k_perp, double sigma);

/// Numerically integrated moments of an arbitrary Gaussian superposition.
struct OamMoments {
  double l_expect = 0.0;
  double l2_expect = 0.0;     // -<d^2/dphi^2>
  double l2_by_parts = 0.0;   // <|d psi/dphi|^2>, equal to l2_expect analytically
  double norm = 0.0;
  double imag_residue = 0.0;  // |Im| of the first-moment ratio
};

/// Expectation of the OAM operator about the axis through `axis`, by iterated
/// polar quadrature (Simpson in rho, periodic trapezoid in phi). Throws
/// DegenerateStateError when the norm is below kDegenerateNorm and
/// NumericalError when the first moment's imaginary residue exceeds 1e-9.
OamMoments oam_quadrature(const GaussianSuperposition& psi, const QuadratureSpec& spec = {}, Vec2 axis = {});

/// Same moments on a Cartesian Simpson grid; used for anisotropic envelopes.
OamMoments oam_quadrature_cartesian(const GaussianSuperposition& psi, const QuadratureSpec& spec = {},
                                    Vec2 axis = {});

enum class WavefunctionKind {
  test,             // psi_t, real space
  realspace_shift,  // displaced pair, evaluated in momentum space
};

/// Oracle entry point: <L_z> for the selected wavefunction. For
/// realspace_shift the displacement is `shift` and the phase is
/// cfg.delta_alpha(); cfg.k_perp is ignored.
OamMoments oam_quadrature_oracle(const BeamParams& beam, const InterferometerConfig& cfg, WavefunctionKind kind,
                                 double shift = 0.0, const QuadratureSpec& spec = {});

/// Test wavefunction in momentum space: two envelopes centred at k_perp y^
/// and k_perp x^.
GaussianSuperposition test_wavefunction_momentum(const BeamParams& beam, const InterferometerConfig& cfg);

/// Centroid int r |psi|^2 / int |psi|^2. Applied to a momentum-space
/// wavefunction this is <k>.
Vec2 centroid(const GaussianSuperposition& psi, const QuadratureSpec& spec = {});

/// <-i grad> evaluated in position space.
Vec2 mean_momentum(const GaussianSuperposition& psi, const QuadratureSpec& spec = {});

/// Change of <L_z> when the reference axis moves from the origin to
/// (x0, y0): <L_z>_origin - <L_z>_(x0,y0), by position-space quadrature of
/// -i int psi* (x0 d/dy - y0 d/dx) psi (times kHandedness).
double delta_lz_translation(const BeamParams& beam, const InterferometerConfig& cfg, double x0, double y0,
                            const QuadratureSpec& spec = {});

/// <L_z> of the real-space displaced pair, by momentum-space quadrature.
double oam_realspace_shift(double delta, double zeta, double delta_alpha, const QuadratureSpec& spec = {});

/// Closed form of the same quantity through Fourier duality: the momentum
/// envelope has width 2 zeta and the displacement acts as the momentum
/// shift, so k_perp sigma -> 2 delta zeta.
double oam_realspace_shift_closed_form(double delta, double zeta, double delta_alpha);

}  // namespace vlat
