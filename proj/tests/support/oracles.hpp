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

// Reference computations for the test suite. Everything here is written
// against Boost.Math and the standard library only, from the defining
// integrals, so that no code path is shared with the library under test.

#include <complex>

namespace oracle {

using cplx = std::complex<double>;

/// First and second OAM moments with L = +i d/dphi, normalized by the norm.
struct Moments {
  double l = 0.0;
  double l2 = 0.0;
  double norm = 0.0;
};

/// Two-plane-wave test state psi0 (e^{i k y} + e^{i da} e^{i k x}) / sqrt2 with
/// an isotropic Gaussian envelope of width sigma. The phi derivatives are
/// written out by hand and integrated on a polar grid (adaptive
/// Gauss-Kronrod in rho, adaptive trapezoid in phi).
Moments two_wave_moments(double k, double sigma, double delta_alpha);

/// <L> of the same state with an anisotropic envelope, by adaptive
/// Gauss-Kronrod on a Cartesian box.
double two_wave_oam_anisotropic(double k, double sigma_x, double sigma_y, double delta_alpha);

/// <L> about an axis through (x0, y0) for the isotropic test state.
double two_wave_oam_about(double k, double sigma, double delta_alpha, double x0, double y0);

/// The three radial integrals of the second-moment derivation, integrated
/// numerically with Boost's cylindrical Bessel functions.
struct RadialIntegrals {
  double power = 0.0;
  double hankel0 = 0.0;
  double hankel1 = 0.0;
  // Integrals of the absolute integrands: the scale against which a
  // relative error is meaningful even where an integral cancels to zero.
  double hankel0_l1 = 0.0;
  double hankel1_l1 = 0.0;
};
RadialIntegrals radial_integrals(double k, double sigma);

/// Exact azimuthal harmonic (1/sqrt(2 pi)) int psi_t e^{i l phi} dphi at
/// radius rho, via the Jacobi-Anger expansion and Boost's J_l.
cplx two_wave_harmonic(int l, double rho, double k, double sigma, double delta_alpha);

/// <L> of the two plane waves e^{i k y} + e^{i delta} e^{i k x} averaged over
/// a uniform disk of radius R (harmonics |l| <= l_range), with each
/// harmonic's radial integral int_0^R rho J_l(k rho) drho done by
/// Gauss-Kronrod.
double disk_two_wave_oam(double k, double radius, double delta, int l_range);

/// Golden-section maximum of f on [a, b]; returns the abscissa.
template <class F>
double argmax(F f, double a, double b, double tol = 1e-10) {
  const double g = 0.6180339887498949;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d; d = c; fd = fc; c = b - g * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd; d = a + g * (b - a); fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace oracle
