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

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "vlat/error.hpp"
#include "vlat_cli/commands.hpp"
#include "vlat_cli/config.hpp"

namespace {

using namespace vlat::cli;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool verbose = false;
};

void add_common(CLI::App* cmd, Common& c, bool needs_out) {
  cmd->add_option("--config", c.config, "Run configuration file (defaults apply when omitted)");
  cmd->add_option("--seed", c.seed, "Override [run] seed");
  auto* out = cmd->add_option("--out", c.out, "Output path");
  if (needs_out) out->required();
  cmd->add_flag("--verbose", c.verbose, "Write intermediate products");
}

RunConfig resolve(const Common& c) {
  RunConfig cfg = c.config.empty() ? RunConfig{} : load_config(c.config);
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vlat: neutron phase-vortex lattice simulation and analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "vlat 0.1.0");

  Common common;
  std::string in, flat, fit;

  auto* simulate = app.add_subcommand("simulate", "Synthesize prisms-in and prisms-out detector images");
  add_common(simulate, common, true);

  auto* reduce = app.add_subcommand("reduce", "Run the five-stage reduction pipeline");
  add_common(reduce, common, true);
  reduce->add_option("--in", in, "Prisms-in raster")->required();
  reduce->add_option("--flat", flat, "Prisms-out raster")->required();

  auto* fitcmd = app.add_subcommand("fit", "Fit the lattice model to a reduced raster");
  add_common(fitcmd, common, true);
  fitcmd->add_option("--in", in, "Reduced raster")->required();

  auto* map = app.add_subcommand("oam-map", "Per-domain OAM map from a fit document");
  add_common(map, common, true);
  map->add_option("--fit", fit, "Fit document")->required();

  auto* sweep = app.add_subcommand("sweep", "Tabulate <L_z> and chi over k_perp sigma and dAlpha");
  add_common(sweep, common, true);

  auto* refraction = app.add_subcommand("refraction", "Prism refraction angle and ideal lattice period");
  add_common(refraction, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const RunConfig cfg = resolve(common);
    if (*simulate) return cmd_simulate(cfg, common.out, std::cout);
    if (*reduce) return cmd_reduce(cfg, in, flat, common.out, common.verbose, std::cout);
    if (*fitcmd) return cmd_fit(cfg, in, common.out, std::cout);
    if (*map) return cmd_oam_map(cfg, fit, common.out, std::cout);
    if (*sweep) return cmd_sweep(cfg, common.out, std::cout);
    if (*refraction) return cmd_refraction(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "vlat: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitUsage;
}
