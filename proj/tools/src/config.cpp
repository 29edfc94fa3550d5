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

#include "vlat_cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <string_view>

#include "vlat/error.hpp"

namespace vlat::cli {

double InstrumentConfig::wavenumber() const { return k_z > 0.0 ? k_z : kTwoPi / wavelength; }

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view text) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw FormatError("invalid number '" + std::string(text) + "'");
  return v;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_number<double>(trim(text.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string format(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string format(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format(v[i]);
  return s;
}

struct Binding {
  std::string_view section;
  std::string_view key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class T>
Binding bind_key(std::string_view section, std::string_view key, T RunConfig::*group, auto member) {
  return {section, key,
          [=](RunConfig& c, std::string_view v) {
            auto& field = (c.*group).*member;
            using F = std::remove_reference_t<decltype(field)>;
            if constexpr (std::is_same_v<F, std::vector<double>>)
              field = parse_list(v);
            else
              field = parse_number<F>(v);
          },
          [=](const RunConfig& c) {
            const auto& field = (c.*group).*member;
            using F = std::remove_cvref_t<decltype(field)>;
            if constexpr (std::is_floating_point_v<F> || std::is_same_v<F, std::vector<double>>)
              return format(field);
            else
              return std::to_string(field);
          }};
}

const std::vector<Binding>& bindings() {
  static const std::vector<Binding> table = {
      bind_key("instrument", "wavelength", &RunConfig::instrument, &InstrumentConfig::wavelength),
      bind_key("instrument", "wedge_angle_deg", &RunConfig::instrument, &InstrumentConfig::wedge_angle_deg),
      bind_key("instrument", "sld", &RunConfig::instrument, &InstrumentConfig::sld),
      bind_key("instrument", "k_z", &RunConfig::instrument, &InstrumentConfig::k_z),
      bind_key("instrument", "coherence_length", &RunConfig::instrument, &InstrumentConfig::coherence_length),
      bind_key("detector", "width", &RunConfig::detector, &DetectorConfig::width),
      bind_key("detector", "height", &RunConfig::detector, &DetectorConfig::height),
      bind_key("detector", "pitch", &RunConfig::detector, &DetectorConfig::pitch),
      bind_key("detector", "mean_counts", &RunConfig::detector, &DetectorConfig::mean_counts),
      bind_key("lattice", "period", &RunConfig::lattice, &LatticeConfig::period),
      bind_key("lattice", "rotation_deg", &RunConfig::lattice, &LatticeConfig::rotation_deg),
      bind_key("lattice", "opening_deg", &RunConfig::lattice, &LatticeConfig::opening_deg),
      bind_key("lattice", "alpha1", &RunConfig::lattice, &LatticeConfig::alpha1),
      bind_key("lattice", "alpha2", &RunConfig::lattice, &LatticeConfig::alpha2),
      bind_key("lattice", "a1", &RunConfig::lattice, &LatticeConfig::a1),
      bind_key("lattice", "a2", &RunConfig::lattice, &LatticeConfig::a2),
      bind_key("lattice", "a3", &RunConfig::lattice, &LatticeConfig::a3),
      bind_key("lattice", "envelope_width", &RunConfig::lattice, &LatticeConfig::envelope_width),
      bind_key("lattice", "center_x", &RunConfig::lattice, &LatticeConfig::center_x),
      bind_key("lattice", "center_y", &RunConfig::lattice, &LatticeConfig::center_y),
      bind_key("illumination", "x_poly", &RunConfig::illumination, &IlluminationConfig::x_poly),
      bind_key("illumination", "y_poly", &RunConfig::illumination, &IlluminationConfig::y_poly),
      bind_key("illumination", "drift_y_poly", &RunConfig::illumination, &IlluminationConfig::drift_y_poly),
      bind_key("reduction", "bin_factor", &RunConfig::reduction, &ReductionConfig::bin_factor),
      bind_key("reduction", "poly_degree", &RunConfig::reduction, &ReductionConfig::poly_degree),
      bind_key("reduction", "noise_floor", &RunConfig::reduction, &ReductionConfig::noise_floor),
      bind_key("reduction", "guard_fraction", &RunConfig::reduction, &ReductionConfig::guard_fraction),
      bind_key("fit", "max_iterations", &RunConfig::fit, &FitOptions::max_iterations),
      bind_key("fit", "relative_tolerance", &RunConfig::fit, &FitOptions::relative_tolerance),
      bind_key("fit", "gradient_tolerance", &RunConfig::fit, &FitOptions::gradient_tolerance),
      bind_key("map", "radius", &RunConfig::map, &MapConfig::radius),
      bind_key("map", "stride", &RunConfig::map, &MapConfig::stride),
      bind_key("map", "l_range", &RunConfig::map, &MapConfig::l_range),
      bind_key("map", "pixels_across", &RunConfig::map, &MapConfig::pixels_across),
      bind_key("map", "extent_periods", &RunConfig::map, &MapConfig::extent_periods),
      bind_key("sweep", "k_sigma_max", &RunConfig::sweep, &SweepConfig::k_sigma_max),
      bind_key("sweep", "k_sigma_count", &RunConfig::sweep, &SweepConfig::k_sigma_count),
      bind_key("sweep", "phase_count", &RunConfig::sweep, &SweepConfig::phase_count),
      bind_key("sweep", "inset_k_sigma_min", &RunConfig::sweep, &SweepConfig::inset_k_sigma_min),
      bind_key("sweep", "inset_k_sigma_max", &RunConfig::sweep, &SweepConfig::inset_k_sigma_max),
      bind_key("sweep", "inset_k_sigma_count", &RunConfig::sweep, &SweepConfig::inset_k_sigma_count),
      bind_key("sweep", "inset_phase_halfwidth", &RunConfig::sweep, &SweepConfig::inset_phase_halfwidth),
      bind_key("sweep", "inset_phase_count", &RunConfig::sweep, &SweepConfig::inset_phase_count),
      {"run", "seed", [](RunConfig& c, std::string_view v) { c.seed = parse_number<std::uint64_t>(v); },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
  };
  return table;
}

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(std::string("config: ") + what);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void RunConfig::validate() const {
  require(positive(instrument.wavelength), "instrument.wavelength must be positive");
  require(instrument.wedge_angle_deg > 0.0 && instrument.wedge_angle_deg < 90.0,
          "instrument.wedge_angle_deg must lie in (0, 90)");
  require(positive(instrument.sld), "instrument.sld must be positive");
  require(instrument.k_z >= 0.0 && std::isfinite(instrument.k_z), "instrument.k_z must be >= 0");
  require(positive(instrument.coherence_length), "instrument.coherence_length must be positive");
  require(detector.width > 0 && detector.height > 0, "detector dimensions must be positive");
  require(positive(detector.pitch), "detector.pitch must be positive");
  require(positive(detector.mean_counts), "detector.mean_counts must be positive");
  require(positive(lattice.period), "lattice.period must be positive");
  require(positive(lattice.envelope_width), "lattice.envelope_width must be positive");
  for (double a : {lattice.a1, lattice.a2, lattice.a3}) require(a >= 0.0 && a <= 1.0, "lattice amplitudes must lie in [0, 1]");
  require(!illumination.x_poly.empty() && !illumination.y_poly.empty() && !illumination.drift_y_poly.empty(),
          "illumination polynomials must be non-empty");
  reduction.validate();
  require(fit.max_iterations > 0, "fit.max_iterations must be positive");
  require(map.radius >= 0.0 && map.stride >= 0.0, "map.radius and map.stride must be >= 0");
  require(map.l_range >= 1, "map.l_range must be >= 1");
  require(map.pixels_across >= 4, "map.pixels_across must be >= 4");
  require(positive(map.extent_periods), "map.extent_periods must be positive");
  require(sweep.k_sigma_count >= 2 && sweep.phase_count >= 2 && sweep.inset_k_sigma_count >= 2 &&
              sweep.inset_phase_count >= 2,
          "sweep counts must be >= 2");
  require(positive(sweep.k_sigma_max) && positive(sweep.inset_k_sigma_min) &&
              sweep.inset_k_sigma_max > sweep.inset_k_sigma_min && positive(sweep.inset_phase_halfwidth),
          "sweep ranges must be positive and increasing");
}

LatticeTruth RunConfig::truth() const {
  const double k = kTwoPi / lattice.period;
  const double rot = lattice.rotation_deg * kPi / 180.0;
  const double open = lattice.opening_deg * kPi / 180.0;
  LatticeTruth t;
  t.eta2 = {k * std::cos(rot), k * std::sin(rot)};
  t.eta1 = {k * std::cos(rot + open), k * std::sin(rot + open)};
  t.alpha1p = lattice.alpha1;
  t.alpha2p = lattice.alpha2;
  t.a1 = lattice.a1;
  t.a2 = lattice.a2;
  t.a3 = lattice.a3;
  t.mu = {lattice.center_x, lattice.center_y};
  t.s = lattice.envelope_width;
  t.mean_counts = detector.mean_counts;
  return t;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  auto fail = [&](const std::string& msg) { throw FormatError(source + ":" + std::to_string(line_no) + ": " + msg); };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      bool known = false;
      for (const auto& b : bindings()) known = known || b.section == section;
      if (!known) fail("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected 'key = value'");
    if (section.empty()) fail("key outside of a section");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const Binding* match = nullptr;
    for (const auto& b : bindings())
      if (b.section == section && b.key == key) match = &b;
    if (!match) fail("unknown key '" + std::string(key) + "' in [" + section + "]");
    try {
      match->set(cfg, value);
    } catch (const FormatError& e) {
      fail(std::string(key) + ": " + e.what());
    }
  }
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw FormatError(source + ": " + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string to_text(const RunConfig& config) {
  std::string out;
  std::string_view section;
  for (const auto& b : bindings()) {
    if (b.section != section) {
      if (!section.empty()) out += '\n';
      section = b.section;
      out += "[" + std::string(section) + "]\n";
    }
    out += std::string(b.key) + " = " + b.get(config) + "\n";
  }
  return out;
}

}  // namespace vlat::cli
