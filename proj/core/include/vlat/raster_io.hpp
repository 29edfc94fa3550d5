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

#include <string>

#include "vlat/lattice.hpp"

namespace vlat {

// Binary raster: "VLAT", u32 width, u32 height, f64 pitch, then width*height
// f64 values row-major, all little-endian. Excluded pixels are stored as NaN.
void write_raster(const DetectorImage& image, const std::string& path);
/// Throws IoError if unreadable and FormatError on a malformed file. Images
/// whose values are all non-negative integers come back as raw_counts.
DetectorImage read_raster(const std::string& path);

// CSV raster: a "# pitch=<mm>" header line, then one comma-separated line
// per row; excluded pixels are written as "nan".
void write_raster_csv(const DetectorImage& image, const std::string& path);
DetectorImage read_raster_csv(const std::string& path);

/// Reads either format, choosing by the ".csv" extension.
DetectorImage read_any_raster(const std::string& path);

/// 8-bit binary PGM preview, linearly scaled from min to max of the
/// included pixels (excluded pixels are black).
void write_pgm(const std::vector<double>& values, const std::vector<std::uint8_t>& mask, std::size_t width,
               std::size_t height, const std::string& path);
void write_pgm(const DetectorImage& image, const std::string& path);

}  // namespace vlat
