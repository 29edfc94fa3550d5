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

#include "vlat/raster_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "vlat/error.hpp"

namespace vlat {
namespace {

static_assert(std::endian::native == std::endian::little, "raster I/O assumes a little-endian host");

constexpr std::array<char, 4> kMagic{'V', 'L', 'A', 'T'};

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is, const std::string& path) {
  T v;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw FormatError(path + ": truncated raster");
  return v;
}

void finish_kind(DetectorImage& img) {
  const bool counts = std::all_of(img.values.begin(), img.values.end(),
                                  [](double v) { return v >= 0.0 && v == std::floor(v); });
  img.kind = counts && img.included_count() == img.values.size() ? ImageKind::raw_counts : ImageKind::normalized;
}

double stored_value(const DetectorImage& img, std::size_t k) {
  return img.mask[k] ? img.values[k] : std::numeric_limits<double>::quiet_NaN();
}

void load_value(DetectorImage& img, std::size_t k, double v) {
  if (std::isnan(v)) {
    img.values[k] = 0.0;
    img.mask[k] = 0;
  } else {
    img.values[k] = v;
    img.mask[k] = 1;
  }
}

}  // namespace

void write_raster(const DetectorImage& image, const std::string& path) {
  image.validate();
  if (image.width > UINT32_MAX || image.height > UINT32_MAX) throw InvalidArgument("raster too large");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path);
  os.write(kMagic.data(), kMagic.size());
  put(os, static_cast<std::uint32_t>(image.width));
  put(os, static_cast<std::uint32_t>(image.height));
  put(os, image.pitch);
  for (std::size_t k = 0; k < image.values.size(); ++k) put(os, stored_value(image, k));
  if (!os) throw IoError("failed writing " + path);
}

DetectorImage read_raster(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read " + path);
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) throw FormatError(path + ": not a VLAT raster");
  const auto w = get<std::uint32_t>(is, path);
  const auto h = get<std::uint32_t>(is, path);
  const auto pitch = get<double>(is, path);
  if (w == 0 || h == 0) throw FormatError(path + ": empty raster");
  if (!(std::isfinite(pitch) && pitch > 0.0)) throw FormatError(path + ": pitch must be positive");
  is.seekg(0, std::ios::end);
  const auto expected = static_cast<std::streamoff>(4 + 4 + 4 + 8 + 8ull * w * h);
  if (is.tellg() != expected) throw FormatError(path + ": size does not match header");
  is.seekg(4 + 4 + 4 + 8);
  DetectorImage img(w, h, pitch, ImageKind::normalized);
  for (std::size_t k = 0; k < img.values.size(); ++k) load_value(img, k, get<double>(is, path));
  finish_kind(img);
  return img;
}

void write_raster_csv(const DetectorImage& image, const std::string& path) {
  image.validate();
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path);
  os << std::setprecision(17) << "# pitch=" << image.pitch << '\n';
  for (std::size_t j = 0; j < image.height; ++j) {
    for (std::size_t i = 0; i < image.width; ++i) {
      if (i) os << ',';
      if (image.included(i, j))
        os << image.at(i, j);
      else
        os << "nan";
    }
    os << '\n';
  }
  if (!os) throw IoError("failed writing " + path);
}

DetectorImage read_raster_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot read " + path);
  std::string line;
  if (!std::getline(is, line) || line.rfind("# pitch=", 0) != 0) throw FormatError(path + ": missing '# pitch=' header");
  double pitch = 0.0;
  {
    const char* b = line.data() + 8;
    const auto [ptr, ec] = std::from_chars(b, line.data() + line.size(), pitch);
    if (ec != std::errc{} || !(pitch > 0.0)) throw FormatError(path + ": invalid pitch");
  }
  std::vector<double> vals;
  std::size_t width = 0, height = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::size_t count = 0;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cell.erase(0, cell.find_first_not_of(" \t"));
      cell.erase(cell.find_last_not_of(" \t\r") + 1);
      double v;
      if (cell == "nan") {
        v = std::numeric_limits<double>::quiet_NaN();
      } else {
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc{} || ptr != cell.data() + cell.size())
          throw FormatError(path + ":" + std::to_string(height + 2) + ": invalid number '" + cell + "'");
      }
      vals.push_back(v);
      ++count;
    }
    if (height == 0) width = count;
    if (count != width) throw FormatError(path + ":" + std::to_string(height + 2) + ": ragged row");
    ++height;
  }
  if (width == 0 || height == 0) throw FormatError(path + ": empty raster");
  DetectorImage img(width, height, pitch, ImageKind::normalized);
  for (std::size_t k = 0; k < vals.size(); ++k) load_value(img, k, vals[k]);
  finish_kind(img);
  return img;
}

DetectorImage read_any_raster(const std::string& path) {
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  return csv ? read_raster_csv(path) : read_raster(path);
}

void write_pgm(const std::vector<double>& values, const std::vector<std::uint8_t>& mask, std::size_t width,
               std::size_t height, const std::string& path) {
  if (values.size() != width * height || (!mask.empty() && mask.size() != values.size()))
    throw InvalidArgument("write_pgm: size mismatch");
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t k = 0; k < values.size(); ++k)
    if ((mask.empty() || mask[k]) && std::isfinite(values[k])) {
      lo = std::min(lo, values[k]);
      hi = std::max(hi, values[k]);
    }
  const double span = hi > lo ? hi - lo : 1.0;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path);
  os << "P5\n" << width << ' ' << height << "\n255\n";
  for (std::size_t k = 0; k < values.size(); ++k) {
    unsigned char b = 0;
    if ((mask.empty() || mask[k]) && std::isfinite(values[k]))
      b = static_cast<unsigned char>(std::lround(255.0 * (values[k] - lo) / span));
    os.put(static_cast<char>(b));
  }
  if (!os) throw IoError("failed writing " + path);
}

void write_pgm(const DetectorImage& image, const std::string& path) {
  write_pgm(image.values, image.mask, image.width, image.height, path);
}

}  // namespace vlat
