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

#include "vlat_cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "vlat/error.hpp"
#include "vlat/fitkit.hpp"
#include "vlat/oam.hpp"
#include "vlat/raster_io.hpp"
#include "vlat/reduce.hpp"
#include "vlat/vortexmap.hpp"

namespace vlat::cli {
namespace {

constexpr double kMmPerAngstrom = 1e-7;

void kv(std::ostream& out, const std::string& key, double v) {
  out << key << '=' << std::setprecision(10) << v << '\n';
}
void kv(std::ostream& out, const std::string& key, const std::string& v) { out << key << '=' << v << '\n'; }

std::string stem(const std::string& path) {
  const std::filesystem::path p(path);
  return (p.parent_path() / p.stem()).string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double refraction_angle(const RunConfig& cfg) {
  return prism_refraction(cfg.instrument.wavelength, cfg.instrument.sld, cfg.instrument.wedge_angle_deg * kPi / 180.0);
}

}  // namespace

MapPlan plan_map(const MapConfig& map, const FitResult& fit) {
  const double k_mean = 0.5 * (norm(fit.params.eta1) + norm(fit.params.eta2));
  const double radius = map.radius > 0.0 ? map.radius : default_domain_radius(k_mean);
  const double period = k_mean > 0.0 ? kTwoPi / k_mean : 0.0;
  const double extent = period > 0.0 ? map.extent_periods * period : 4.0 * radius;
  const double pitch = 2.0 * radius / map.pixels_across;
  const auto n = static_cast<std::size_t>(std::ceil((extent + 2.0 * radius) / pitch)) + 1;
  const Vec2 origin{fit.params.mu.x - 0.5 * extent - radius, fit.params.mu.y - 0.5 * extent - radius};
  return {{n, n, pitch, origin}, radius};
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const FormatError*>(&e)) return kExitFormat;
  if (dynamic_cast<const InvalidArgument*>(&e)) return kExitUsage;
  if (dynamic_cast<const Error*>(&e)) return kExitNumerical;
  return kExitFailure;
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_dir, std::ostream& out) {
  cfg.validate();
  std::filesystem::create_directories(out_dir);
  const auto& d = cfg.detector;
  const Illumination ill{cfg.illumination.x_poly, cfg.illumination.y_poly};
  const DetectorImage lattice = synthesize_image(cfg.truth(), d.width, d.height, d.pitch, cfg.seed,
                                                 ill.with_vertical_drift(cfg.illumination.drift_y_poly));
  const DetectorImage flat = flat_image(d.width, d.height, d.pitch, d.mean_counts, cfg.seed + 1, ill);
  const std::string base = (std::filesystem::path(out_dir)).string();
  write_raster(lattice, base + "/lattice.vlat");
  write_raster(flat, base + "/flat.vlat");
  write_pgm(lattice, base + "/lattice.pgm");
  write_pgm(flat, base + "/flat.pgm");

  const double gamma = refraction_angle(cfg);
  kv(out, "lattice", base + "/lattice.vlat");
  kv(out, "flat", base + "/flat.vlat");
  kv(out, "width", static_cast<double>(d.width));
  kv(out, "height", static_cast<double>(d.height));
  kv(out, "pitch_mm", d.pitch);
  kv(out, "truth_period_mm", cfg.lattice.period);
  kv(out, "ideal_period_mm", lattice_period(cfg.instrument.wavenumber(), gamma) * kMmPerAngstrom);
  return kExitOk;
}

int cmd_reduce(const RunConfig& cfg, const std::string& lattice_path, const std::string& flat_path,
               const std::string& out_path, bool verbose, std::ostream& out) {
  const DetectorImage lattice = read_any_raster(lattice_path);
  const DetectorImage flat = read_any_raster(flat_path);
  int stages = 0;
  const std::string base = stem(out_path);
  const DetectorImage reduced = reduce_pipeline(lattice, flat, cfg.reduction,
                                                [&](int k, std::string_view name, const DetectorImage& img) {
                                                  ++stages;
                                                  if (!verbose) return;
                                                  const std::string p = base + ".stage" + std::to_string(k) + "_" +
                                                                        std::string(name);
                                                  write_raster(img, p + ".vlat");
                                                  write_pgm(img, p + ".pgm");
                                                });
  write_raster(reduced, out_path);
  write_pgm(reduced, base + ".pgm");
  kv(out, "reduced", out_path);
  kv(out, "stages", stages);
  kv(out, "width", static_cast<double>(reduced.width));
  kv(out, "height", static_cast<double>(reduced.height));
  kv(out, "pitch_mm", reduced.pitch);
  kv(out, "included", static_cast<double>(reduced.included_count()));
  return stages == kReductionStages ? kExitOk : kExitNumerical;
}

int cmd_fit(const RunConfig& cfg, const std::string& in_path, const std::string& out_path, std::ostream& out) {
  const DetectorImage image = read_any_raster(in_path);
  const LatticeTruth guess = initial_guess(image);
  const FitResult fit = fit_lattice(image, guess, cfg.fit);
  {
    std::ofstream js(out_path);
    if (!js) throw IoError("cannot write " + out_path);
    js << fit_to_json(fit);
    if (!js) throw IoError("failed writing " + out_path);
  }
  DetectorImage model(image.width, image.height, image.pitch, ImageKind::zero_mean);
  for (std::size_t j = 0; j < image.height; ++j)
    for (std::size_t i = 0; i < image.width; ++i) model.at(i, j) = lattice_model(fit.params, image.pixel_center(i, j));
  write_raster(model, stem(out_path) + ".model.vlat");
  write_pgm(model, stem(out_path) + ".model.pgm");

  kv(out, "fit", out_path);
  kv(out, "converged", fit.converged ? "true" : "false");
  kv(out, "iterations", fit.iterations);
  kv(out, "period1_mm", fit.period1());
  kv(out, "period2_mm", fit.period2());
  kv(out, "contrast", contrast(fit));
  kv(out, "residual_norm", fit.residual_norm);
  return fit.converged ? kExitOk : kExitNumerical;
}

int cmd_oam_map(const RunConfig& cfg, const std::string& fit_path, const std::string& out_path, std::ostream& out) {
  const FitResult fit = fit_from_json(read_file(fit_path));
  const MapPlan plan = plan_map(cfg.map, fit);
  const ComplexField field = reconstruct_test_field(fit, plan.grid);
  const OamMap map = oam_map(field, plan.radius, cfg.map.stride, cfg.map.l_range);
  write_oam_map(map, out_path);
  write_pgm(map.values, {}, map.nx, map.ny, out_path + ".pgm");
  const DiagonalReport diag = diagonal_invariance(map);

  kv(out, "map", out_path);
  kv(out, "nx", static_cast<double>(map.nx));
  kv(out, "ny", static_cast<double>(map.ny));
  kv(out, "domain_radius_mm", map.domain_radius);
  kv(out, "stride_mm", map.stride);
  kv(out, "l_range", map.l_range);
  kv(out, "max_abs_l", map.max_abs());
  kv(out, "range", map.range());
  kv(out, "diagonal_spread", diag.max_spread);
  kv(out, "diagonal_relative", diag.relative);
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const std::string& out_path, std::ostream& out) {
  const auto& s = cfg.sweep;
  std::ofstream csv(out_path);
  if (!csv) throw IoError("cannot write " + out_path);
  csv << std::setprecision(12) << "grid,k_perp_sigma,delta_alpha,l_expect,l2_expect,chi\n";
  std::size_t rows = 0, degenerate = 0;
  auto emit = [&](const char* grid, double ks, double da) {
    csv << grid << ',' << ks << ',' << da << ',';
    try {
      const OamResult r = oam_result(ks, da);
      csv << r.l_expect << ',' << r.l2_expect << ',' << r.chi << '\n';
    } catch (const DegenerateStateError&) {
      csv << "nan,nan,nan\n";
      ++degenerate;
    }
    ++rows;
  };
  for (int i = 0; i < s.k_sigma_count; ++i) {
    const double ks = s.k_sigma_max * i / (s.k_sigma_count - 1);
    for (int j = 0; j < s.phase_count; ++j) emit("main", ks, -kPi + kTwoPi * j / (s.phase_count - 1));
  }
  const double lmin = std::log10(s.inset_k_sigma_min);
  const double lmax = std::log10(s.inset_k_sigma_max);
  for (int i = 0; i < s.inset_k_sigma_count; ++i) {
    const double ks = std::pow(10.0, lmin + (lmax - lmin) * i / (s.inset_k_sigma_count - 1));
    for (int j = 0; j < s.inset_phase_count; ++j)
      emit("inset", ks, kPi - s.inset_phase_halfwidth + 2.0 * s.inset_phase_halfwidth * j / (s.inset_phase_count - 1));
  }
  if (!csv) throw IoError("failed writing " + out_path);
  kv(out, "sweep", out_path);
  kv(out, "rows", static_cast<double>(rows));
  kv(out, "degenerate", static_cast<double>(degenerate));
  return kExitOk;
}

int cmd_refraction(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const double gamma = refraction_angle(cfg);
  const double k_z = cfg.instrument.wavenumber();
  const double period_mm = lattice_period(k_z, gamma) * kMmPerAngstrom;
  const double k_perp = kTwoPi / period_mm;
  kv(out, "refraction_angle_rad", gamma);
  kv(out, "k_z_per_angstrom", k_z);
  kv(out, "ideal_period_mm", period_mm);
  kv(out, "k_perp_per_mm", k_perp);
  kv(out, "k_perp_sigma", k_perp * cfg.instrument.coherence_length);
  kv(out, "domain_radius_mm", default_domain_radius(k_perp));
  return kExitOk;
}

}  // namespace vlat::cli
