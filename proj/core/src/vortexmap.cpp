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

#include "vlat/vortexmap.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

#include "vlat/error.hpp"
#include "vlat/parallel.hpp"

namespace vlat {

ComplexField reconstruct_test_field(const LatticeTruth& params, const GridSpec& grid) {
  if (grid.width == 0 || grid.height == 0) throw InvalidArgument("reconstruct_test_field: empty grid");
  ComplexField f(grid.width, grid.height, grid.pitch, grid.origin);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t j = 0; j < grid.height; ++j)
    for (std::size_t i = 0; i < grid.width; ++i) {
      const Vec2 r = f.pixel_center(i, j);
      f.at(i, j) = inv_sqrt2 * (std::polar(1.0, dot(params.eta1, r) + params.alpha1p) +
                                std::polar(1.0, dot(params.eta2, r) + params.alpha2p));
    }
  return f;
}

ComplexField reconstruct_test_field(const FitResult& fit, const GridSpec& grid) {
  if (!fit.converged) throw InvalidArgument("reconstruct_test_field: fit did not converge");
  return reconstruct_test_field(fit.params, grid);
}

double disk_coverage(Vec2 c, double pitch, Vec2 center, double radius) {
  const double h = 0.5 * pitch;
  const double dx = std::abs(c.x - center.x);
  const double dy = std::abs(c.y - center.y);
  const double far = std::hypot(dx + h, dy + h);
  if (far <= radius) return 1.0;
  const double nx = std::max(dx - h, 0.0);
  const double ny = std::max(dy - h, 0.0);
  if (std::hypot(nx, ny) >= radius) return 0.0;
  constexpr int kSub = 16;
  int inside = 0;
  for (int b = 0; b < kSub; ++b)
    for (int a = 0; a < kSub; ++a) {
      const double x = c.x - h + (a + 0.5) * pitch / kSub - center.x;
      const double y = c.y - h + (b + 0.5) * pitch / kSub - center.y;
      inside += x * x + y * y <= radius * radius;
    }
  return static_cast<double>(inside) / (kSub * kSub);
}

namespace {

struct PixelWindow {
  std::size_t i0, i1, j0, j1;  // inclusive
};

PixelWindow disk_window(const ComplexField& field, Vec2 center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidArgument("saaft: radius must be positive");
  const double x0 = center.x - radius - field.origin.x;
  const double x1 = center.x + radius - field.origin.x;
  const double y0 = center.y - radius - field.origin.y;
  const double y1 = center.y + radius - field.origin.y;
  const double eps = 1e-9 * field.pitch;
  const double wmm = static_cast<double>(field.width) * field.pitch;
  const double hmm = static_cast<double>(field.height) * field.pitch;
  if (x0 < -eps || y0 < -eps || x1 > wmm + eps || y1 > hmm + eps)
    throw InvalidArgument("saaft: analysis disk extends beyond the field");
  auto lo = [&](double v) { return static_cast<std::size_t>(std::max(0.0, std::floor(v / field.pitch))); };
  auto hi = [&](double v, std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(std::max(0.0, std::ceil(v / field.pitch) - 1.0)));
  };
  return {lo(x0), hi(x1, field.width), lo(y0), hi(y1, field.height)};
}

}  // namespace

std::vector<cplx> saaft_spectrum(const ComplexField& field, Vec2 center, double radius, int l_range) {
  if (l_range < 0) throw InvalidArgument("saaft: l_range must be >= 0");
  const PixelWindow win = disk_window(field, center, radius);
  const double area = field.pitch * field.pitch;
  const std::size_t n = static_cast<std::size_t>(2 * l_range + 1);
  std::vector<cplx> out(n);
  std::vector<cplx> powers(n);
  for (std::size_t j = win.j0; j <= win.j1; ++j)
    for (std::size_t i = win.i0; i <= win.i1; ++i) {
      const Vec2 c = field.pixel_center(i, j);
      const double w = disk_coverage(c, field.pitch, center, radius);
      if (w == 0.0) continue;
      const cplx v = w * area * field.at(i, j);
      const double dx = c.x - center.x;
      const double dy = c.y - center.y;
      if (std::hypot(dx, dy) < 1e-12 * field.pitch) {
        // The axis pixel has no azimuth; it contributes to l = 0 only.
        out[static_cast<std::size_t>(l_range)] += v;
        continue;
      }
      const cplx unit = std::polar(1.0, std::atan2(dy, dx));
      // e^{i l phi} for l = -L..L by repeated multiplication from l = 0.
      cplx up{1.0, 0.0};
      cplx down{1.0, 0.0};
      out[static_cast<std::size_t>(l_range)] += v;
      for (int l = 1; l <= l_range; ++l) {
        up *= unit;
        down *= std::conj(unit);
        out[static_cast<std::size_t>(l_range + l)] += up * v;
        out[static_cast<std::size_t>(l_range - l)] += down * v;
      }
    }
  return out;
}

cplx saaft(const ComplexField& field, Vec2 center, double radius, int l) {
  const int range = std::abs(l);
  return saaft_spectrum(field, center, radius, range)[static_cast<std::size_t>(l + range)];
}

double oam_from_spectrum(const std::vector<cplx>& amplitudes) {
  if (amplitudes.size() % 2 == 0) throw InvalidArgument("oam_from_spectrum: expected amplitudes for l = -L..L");
  const int L = static_cast<int>(amplitudes.size() / 2);
  double num = 0.0, den = 0.0;
  for (int l = -L; l <= L; ++l) {
    const double p = std::norm(amplitudes[static_cast<std::size_t>(l + L)]);
    num += l * p;
    den += p;
  }
  return den > 0.0 ? num / den : 0.0;
}

double OamMap::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double OamMap::range() const {
  if (values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

double default_domain_radius(double k_perp) {
  if (!(k_perp > 0.0) || !std::isfinite(k_perp)) throw InvalidArgument("default_domain_radius: k_perp must be > 0");
  return 0.75 / k_perp;
}

OamMap oam_map(const ComplexField& field, double radius, double stride, int l_range) {
  if (!(radius > 0.0)) throw InvalidArgument("oam_map: radius must be positive");
  if (l_range < 1) throw InvalidArgument("oam_map: l_range must be >= 1");
  if (!(stride > 0.0)) stride = radius / 4.0;
  const auto step = static_cast<std::size_t>(std::max(1.0, std::round(stride / field.pitch)));

  // Pixel indices whose centers keep the disk inside the field.
  const auto first = static_cast<std::size_t>(std::ceil(radius / field.pitch - 0.5 - 1e-9));
  auto count = [&](std::size_t n) -> std::size_t {
    const double last = static_cast<double>(n) - 0.5 - radius / field.pitch + 1e-9;
    if (last < static_cast<double>(first)) return 0;
    return (static_cast<std::size_t>(std::floor(last)) - first) / step + 1;
  };
  OamMap map;
  map.nx = count(field.width);
  map.ny = count(field.height);
  if (map.nx == 0 || map.ny == 0) throw InvalidArgument("oam_map: field smaller than one analysis domain");
  map.first_center = field.pixel_center(first, first);
  map.stride = static_cast<double>(step) * field.pitch;
  map.domain_radius = radius;
  map.l_range = l_range;
  map.values.resize(map.nx * map.ny);
  parallel_for(0, map.ny, [&](std::size_t j) {
    for (std::size_t i = 0; i < map.nx; ++i)
      map.values[j * map.nx + i] = oam_from_spectrum(saaft_spectrum(field, map.center(i, j), radius, l_range));
  });
  return map;
}

DiagonalReport diagonal_invariance(const OamMap& map) {
  DiagonalReport rep;
  rep.range = map.range();
  const long nx = static_cast<long>(map.nx);
  const long ny = static_cast<long>(map.ny);
  for (long d = -(ny - 1); d <= nx - 1; ++d) {  // line i - j = d
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    long len = 0;
    for (long j = 0; j < ny; ++j) {
      const long i = j + d;
      if (i < 0 || i >= nx) continue;
      const double v = map.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      ++len;
    }
    if (len < 2) continue;
    ++rep.lines;
    rep.max_spread = std::max(rep.max_spread, hi - lo);
  }
  // A map whose range is round-off is constant; its ratio would be noise.
  const bool constant = rep.range <= 1e-12 * std::max(1.0, map.max_abs());
  rep.relative = constant ? 0.0 : rep.max_spread / rep.range;
  return rep;
}

void write_oam_map(const OamMap& map, const std::string& csv_path) {
  std::ofstream csv(csv_path);
  if (!csv) throw IoError("cannot write " + csv_path);
  csv << std::setprecision(17);
  for (std::size_t j = 0; j < map.ny; ++j) {
    for (std::size_t i = 0; i < map.nx; ++i) csv << (i ? "," : "") << map.at(i, j);
    csv << '\n';
  }
  if (!csv) throw IoError("failed writing " + csv_path);

  nlohmann::ordered_json meta;
  meta["domain_radius_mm"] = map.domain_radius;
  meta["stride_mm"] = map.stride;
  meta["l_range"] = map.l_range;
  meta["nx"] = map.nx;
  meta["ny"] = map.ny;
  meta["first_center_mm"] = {map.first_center.x, map.first_center.y};
  meta["max_abs_l"] = map.max_abs();
  const std::string meta_path = csv_path + ".json";
  std::ofstream js(meta_path);
  if (!js) throw IoError("cannot write " + meta_path);
  js << meta.dump(2) << '\n';
  if (!js) throw IoError("failed writing " + meta_path);
}

}  // namespace vlat
