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

#include <exception>
#include <iosfwd>
#include <string>

#include "vlat/vortexmap.hpp"
#include "vlat_cli/config.hpp"

namespace vlat::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,     // unexpected internal error
  kExitUsage = 2,       // bad arguments or configuration
  kExitIo = 3,          // unreadable input or unwritable output
  kExitFormat = 4,      // corrupt raster or document
  kExitNumerical = 5,   // a computation failed or a validation did not pass
};

/// Sampling grid and domain radius of an OAM map: a square region of
/// map.extent_periods lattice periods centred on the fitted envelope, padded
/// by one domain radius, sampled with map.pixels_across pixels per domain
/// diameter.
struct MapPlan {
  GridSpec grid;
  double radius = 0.0;
};
MapPlan plan_map(const MapConfig& map, const FitResult& fit);

/// Maps a toolkit exception to its exit code.
int exit_code_for(const std::exception& e);

/// Every command writes its files, prints "key=value" summary lines to
/// `out`, and returns an ExitCode. Errors propagate as exceptions.

/// Writes <dir>/lattice.vlat and <dir>/flat.vlat (plus PGM previews).
int cmd_simulate(const RunConfig& cfg, const std::string& out_dir, std::ostream& out);

/// Five-stage reduction. With `verbose`, each stage is also written to
/// <out>.stage<k>_<name>.vlat.
int cmd_reduce(const RunConfig& cfg, const std::string& lattice_path, const std::string& flat_path,
               const std::string& out_path, bool verbose, std::ostream& out);

/// Initial guess and fit; writes the fit document to out_path and the model
/// raster to <out>.model.vlat. Returns kExitNumerical if the fit did not
/// converge.
int cmd_fit(const RunConfig& cfg, const std::string& in_path, const std::string& out_path, std::ostream& out);

/// OAM map from a fit document: <out> CSV, <out>.json metadata and
/// <out>.pgm preview.
int cmd_oam_map(const RunConfig& cfg, const std::string& fit_path, const std::string& out_path, std::ostream& out);

/// Grid of <L_z>, chi and <L_z^2> over (k_perp sigma, dAlpha), including the
/// small-k_perp inset around dAlpha = pi.
int cmd_sweep(const RunConfig& cfg, const std::string& out_path, std::ostream& out);

/// Prism refraction angle, ideal lattice period and k_perp sigma.
int cmd_refraction(const RunConfig& cfg, std::ostream& out);

}  // namespace vlat::cli
