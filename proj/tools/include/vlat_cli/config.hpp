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

#include <cstdint>
#include <string>
#include <vector>

#include "vlat/fitkit.hpp"
#include "vlat/lattice.hpp"
#include "vlat/reduce.hpp"

namespace vlat::cli {

struct InstrumentConfig {
  double wavelength = 1.92;          // Angstrom
  double wedge_angle_deg = 5.0;
  double sld = kAluminiumSld;        // 1/Angstrom^2
  double k_z = 0.0;                  // 1/Angstrom; 0 derives 2 pi / wavelength
  double coherence_length = 0.0042;  // mm

  double wavenumber() const;
};

struct DetectorConfig {
  std::size_t width = 800;
  std::size_t height = 800;
  double pitch = 0.02;  // mm
  double mean_counts = 1.5;
};

struct LatticeConfig {
  double period = 1.83;  // mm, both fringe families
  double rotation_deg = 0.0;
  double opening_deg = 90.0;  // angle from eta2 to eta1
  double alpha1 = 0.4;
  double alpha2 = -1.1;
  double a1 = 0.2861;
  double a2 = 0.2861;
  double a3 = 0.2861;
  double envelope_width = 8.0;  // mm
  double center_x = 8.0;
  double center_y = 8.0;
};

struct IlluminationConfig {
  std::vector<double> x_poly{1.0, 0.08, -0.05};
  std::vector<double> y_poly{1.0, -0.06, -0.1};
  /// Extra vertical profile present only in the prisms-in image.
  std::vector<double> drift_y_poly{1.0, 0.03, 0.04};
};

struct MapConfig {
  double radius = 0.0;  // mm; 0 selects 0.75 / |eta|
  double stride = 0.0;  // mm; 0 selects radius / 4
  int l_range = 5;
  int pixels_across = 40;     // field samples across the domain diameter
  double extent_periods = 1.0;  // side of the scanned region in lattice periods
};

struct SweepConfig {
  double k_sigma_max = 8.0;
  int k_sigma_count = 161;
  int phase_count = 181;
  double inset_k_sigma_min = 1e-5;
  double inset_k_sigma_max = 0.02;
  int inset_k_sigma_count = 41;
  double inset_phase_halfwidth = 0.05;
  int inset_phase_count = 41;
};

struct RunConfig {
  InstrumentConfig instrument;
  DetectorConfig detector;
  LatticeConfig lattice;
  IlluminationConfig illumination;
  ReductionConfig reduction;
  FitOptions fit;
  MapConfig map;
  SweepConfig sweep;
  std::uint64_t seed = 42;

  /// Throws InvalidArgument naming the offending key.
  void validate() const;
  LatticeTruth truth() const;
};

/// Parses the sectioned key = value format. Unknown sections or keys and
/// malformed values raise FormatError with "<source>:<line>: ..." messages.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Canonical text of a configuration; parse_config(to_text(c)) == c.
std::string to_text(const RunConfig& config);

}  // namespace vlat::cli
