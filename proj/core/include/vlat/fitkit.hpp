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

#include <array>
#include <string>
#include <string_view>

#include "vlat/lattice.hpp"

namespace vlat {

inline constexpr std::size_t kFitParams = 12;

/// Parameter order used for standard errors and the fit document.
inline constexpr std::array<std::string_view, kFitParams> kFitParamNames = {
    "eta1_x", "eta1_y", "eta2_x", "eta2_y", "alpha1p", "alpha2p", "a1", "a2", "a3", "mu_x", "mu_y", "s"};

std::array<double, kFitParams> pack(const LatticeTruth& t);
LatticeTruth unpack(const std::array<double, kFitParams>& p, double mean_counts = 1.0);

struct FitResult {
  LatticeTruth params;
  std::array<double, kFitParams> std_errors{};
  double residual_norm = 0.0;  // sqrt(sum w r^2)
  double gradient_norm = 0.0;
  bool converged = false;
  int iterations = 0;

  /// 2 pi / |eta_i|.
  double period1() const;
  double period2() const;
};

struct FitOptions {
  int max_iterations = 500;
  double relative_tolerance = 1e-10;
  double gradient_tolerance = 1e-8;
};

/// Seeds the fit from a zero-mean reduced image. The lattice wavevectors are
/// the spectral peaks (quadratically refined to sub-bin accuracy); phases and
/// amplitudes come from demodulating the image at those wavevectors; the
/// envelope center and width from the first and second moments of I^2.
/// Throws InsufficientSignal when fewer than two peaks rise above the
/// spectral noise.
LatticeTruth initial_guess(const DetectorImage& image);

/// Levenberg-Marquardt fit of the fringe model to the included pixels of
/// `image`, with an analytic Jacobian. On non-convergence the best
/// parameters found are returned with converged = false.
FitResult fit_lattice(const DetectorImage& image, const LatticeTruth& guess, const FitOptions& options = {});

/// Fringe visibility of the fitted model at the envelope center:
/// (g_max - g_min) / (2 + g_max + g_min), where
/// g = a1 cos t1 + a2 cos t2 + a3 cos(t1 - t2) ranges over all phases. The
/// normalization maps the ideal three-beam pattern (a_i = 2/3) to 1.
double contrast(const LatticeTruth& params);
inline double contrast(const FitResult& fit) { return contrast(fit.params); }

/// Flat JSON document with every parameter, its standard error, the
/// contrast and the convergence metadata.
std::string fit_to_json(const FitResult& fit);
/// Throws FormatError on malformed input or missing keys.
FitResult fit_from_json(std::string_view text);

}  // namespace vlat
