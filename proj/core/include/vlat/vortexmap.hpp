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
#include <string>
#include <vector>

#include "vlat/fitkit.hpp"
#include "vlat/wavefield.hpp"

namespace vlat {

/// Sampling grid for reconstructed fields.
struct GridSpec {
  std::size_t width = 0;
  std::size_t height = 0;
  double pitch = 0.01;
  Vec2 origin{};
};

/// (1/sqrt 2)(e^{i(eta1.r + alpha1p)} + e^{i(eta2.r + alpha2p)}) on the grid;
/// the fitted-lattice counterpart of psi_t / psi0.
ComplexField reconstruct_test_field(const LatticeTruth& params, const GridSpec& grid);
/// Rejects unconverged fits.
ComplexField reconstruct_test_field(const FitResult& fit, const GridSpec& grid);

/// Area-weighted fraction of the pixel centred at `c` (side `pitch`) that
/// lies inside the disk of radius R about `center`.
double disk_coverage(Vec2 c, double pitch, Vec2 center, double radius);

/// Spatially averaged azimuthal transform over a disk:
///   sum_pixels coverage * e^{i l phi} * field * pitch^2,  phi = Arg(r - center).
/// Boundary pixels are weighted by their covered area. Throws
/// InvalidArgument when the disk leaves the field.
cplx saaft(const ComplexField& field, Vec2 center, double radius, int l);

/// All amplitudes for l in [-l_range, l_range] in one pass.
std::vector<cplx> saaft_spectrum(const ComplexField& field, Vec2 center, double radius, int l_range);

/// sum l |a_l|^2 / sum |a_l|^2 for amplitudes ordered l = -L..L. A vanishing
/// spectrum yields 0.
double oam_from_spectrum(const std::vector<cplx>& amplitudes);

struct OamMap {
  std::size_t nx = 0;
  std::size_t ny = 0;
  Vec2 first_center{};  // mm
  double stride = 0.0;  // mm
  double domain_radius = 0.0;
  int l_range = 5;
  std::vector<double> values;  // row-major, ny rows

  double at(std::size_t i, std::size_t j) const { return values[j * nx + i]; }
  Vec2 center(std::size_t i, std::size_t j) const {
    return {first_center.x + static_cast<double>(i) * stride, first_center.y + static_cast<double>(j) * stride};
  }
  double max_abs() const;
  double range() const;  // max - min
};

/// Radius at which k_perp rho = 0.75, the validity limit of the first-order
/// mode expansion.
double default_domain_radius(double k_perp);

/// Evaluates <L_z> on every domain center that keeps the disk inside the
/// field. Centers sit on pixel centers and the stride is rounded to a whole
/// number of pixels (at least one). A non-positive stride selects radius/4.
OamMap oam_map(const ComplexField& field, double radius, double stride, int l_range = 5);

/// Spread of the map along 45 degree lines (i + t, j + t) relative to the
/// map range.
struct DiagonalReport {
  double max_spread = 0.0;
  double range = 0.0;
  double relative = 0.0;  // max_spread / range; 0 when the range is round-off
  std::size_t lines = 0;
};
DiagonalReport diagonal_invariance(const OamMap& map);

/// CSV grid (one row per map row) plus `<path>.json` with radius, stride,
/// l_range and grid geometry.
void write_oam_map(const OamMap& map, const std::string& csv_path);

}  // namespace vlat
