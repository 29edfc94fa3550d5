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
#include <functional>
#include <vector>

#include "vlat/quadrature.hpp"
#include "vlat/types.hpp"
#include "vlat/wavefield.hpp"

namespace vlat {

/// Field sampled on a polar grid: values[i * phi.size() + j] = psi(rho_i, phi_j).
/// The radial rule carries the weights used for int rho (.) drho.
struct PolarSamples {
  Rule1D radial;
  std::vector<double> phi;
  std::vector<cplx> values;

  std::size_t n_rho() const { return radial.size(); }
  std::size_t n_phi() const { return phi.size(); }
  const cplx& at(std::size_t i, std::size_t j) const { return values[i * phi.size() + j]; }
};

/// Samples f(rho cos phi, rho sin phi) on the given radial rule and n_phi
/// equispaced angles starting at 0.
PolarSamples sample_polar(const std::function<cplx(Vec2)>& f, Rule1D radial, std::size_t n_phi);

/// Azimuthal Fourier transform (1/sqrt(2 pi)) int psi e^{i l phi} dphi at
/// every radius (periodic trapezoid). Throws InvalidArgument for a
/// non-uniform angular grid.
std::vector<cplx> aft(const PolarSamples& field, int l);

/// Radial mode amplitudes for l in [l_min, l_max] and their probabilities
/// A^l = int rho |psi^l|^2 / sum_l int rho |psi^l|^2.
struct ModeSpectrum {
  int l_min = 0;
  int l_max = 0;
  std::vector<double> rho;
  std::vector<std::vector<cplx>> amplitudes;  // [l - l_min][rho index]
  std::vector<double> weights;                // int rho |psi^l|^2 drho
  std::vector<double> probabilities;

  const std::vector<cplx>& amplitude(int l) const { return amplitudes.at(static_cast<std::size_t>(l - l_min)); }
  double probability(int l) const { return probabilities.at(static_cast<std::size_t>(l - l_min)); }
  /// sum_l l A^l.
  double mean_l() const;
};

ModeSpectrum mode_spectrum(const PolarSamples& field, int l_max);

/// Recomputes probabilities from spectrum.weights. Throws
/// DegenerateStateError when every weight vanishes.
std::vector<double> mode_probabilities(const ModeSpectrum& spectrum);

/// Inverse transform (1/sqrt(2 pi)) sum_l psi^l e^{-i l phi} at radius index i.
cplx inverse_aft(const ModeSpectrum& spectrum, std::size_t rho_index, double phi);

/// Exact mode amplitude of the test wavefunction in the printed form
/// (-1)^l (2/sigma) e^{-rho^2/sigma^2} J_l(k rho) (1 + i^{-l} e^{i dAlpha}).
/// The azimuthal transform of psi_t equals this times a constant that does
/// not depend on l, rho or the configuration. Isotropic beams only.
cplx jacobi_anger_amplitude(int l, double rho, const BeamParams& beam, const InterferometerConfig& cfg);

/// Small-argument form of the l = -1, 0, 1 amplitudes:
///   l = 0:  (2/sigma) e^{-rho^2/sigma^2} (1 + e^{i dAlpha})
///   l = +-1: -+(k rho / sigma) e^{-rho^2/sigma^2} (1 -+ i e^{i dAlpha})
cplx first_order_mode(int l, double rho, const BeamParams& beam, const InterferometerConfig& cfg);

/// Probabilities {A^-1, A^0, A^+1} implied by the first-order modes:
/// weights 2 + 2 cos dAlpha and (k sigma)^2 / 8 (2 +- 2 sin dAlpha).
struct FirstOrderProbabilities {
  double minus = 0.0;
  double zero = 0.0;
  double plus = 0.0;
};
FirstOrderProbabilities first_order_probabilities(double k_perp_sigma, double delta_alpha);

}  // namespace vlat
