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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "generators.hpp"
#include "vlat/error.hpp"
#include "vlat/raster_io.hpp"

namespace {

using namespace vlat;
namespace fs = std::filesystem;

class RasterIo : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("vlat_raster_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(RasterIo, BinaryRoundTripPreservesValuesAndMask) {
  prop::for_all(10, 71, [&](prop::Gen& g) {
    DetectorImage img(static_cast<std::size_t>(g.integer(1, 30)), static_cast<std::size_t>(g.integer(1, 30)),
                      g.uniform(0.01, 1.0), ImageKind::normalized);
    for (auto& v : img.values) v = g.uniform(-3, 3);
    img.mask[0] = 0;
    write_raster(img, path("a.vlat"));
    const DetectorImage back = read_raster(path("a.vlat"));
    EXPECT_EQ(back.width, img.width);
    EXPECT_EQ(back.height, img.height);
    EXPECT_EQ(back.pitch, img.pitch);
    EXPECT_EQ(back.mask, img.mask);
    for (std::size_t k = 1; k < img.values.size(); ++k) EXPECT_EQ(back.values[k], img.values[k]);
  });
}

TEST_F(RasterIo, CountsComeBackAsRawCounts) {
  DetectorImage img(3, 2, 0.02, ImageKind::raw_counts);
  img.values = {0, 1, 2, 3, 4, 5};
  write_raster(img, path("c.vlat"));
  EXPECT_EQ(read_raster(path("c.vlat")).kind, ImageKind::raw_counts);
  img.values[2] = 0.5;
  write_raster(img, path("c.vlat"));
  EXPECT_EQ(read_raster(path("c.vlat")).kind, ImageKind::normalized);
}

TEST_F(RasterIo, CsvRoundTrip) {
  DetectorImage img(4, 3, 0.2, ImageKind::normalized);
  for (std::size_t k = 0; k < 12; ++k) img.values[k] = 0.1 * static_cast<double>(k) - 0.3;
  img.mask[5] = 0;
  write_raster_csv(img, path("r.csv"));
  const DetectorImage back = read_any_raster(path("r.csv"));
  EXPECT_EQ(back.mask, img.mask);
  EXPECT_DOUBLE_EQ(back.pitch, 0.2);
  for (std::size_t k = 0; k < 12; ++k)
    if (img.mask[k]) EXPECT_EQ(back.values[k], img.values[k]);
}

TEST_F(RasterIo, CorruptFilesAreFormatErrors) {
  {
    std::ofstream(path("bad.vlat")) << "nonsense";
  }
  EXPECT_THROW(read_raster(path("bad.vlat")), FormatError);

  DetectorImage img(5, 5, 0.1, ImageKind::normalized, 1.0);
  write_raster(img, path("t.vlat"));
  fs::resize_file(path("t.vlat"), fs::file_size(path("t.vlat")) - 8);
  EXPECT_THROW(read_raster(path("t.vlat")), FormatError);

  {
    std::ofstream(path("ragged.csv")) << "# pitch=0.1\n1,2,3\n4,5\n";
  }
  try {
    read_raster_csv(path("ragged.csv"));
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  }
  {
    std::ofstream(path("nohdr.csv")) << "1,2\n";
  }
  EXPECT_THROW(read_raster_csv(path("nohdr.csv")), FormatError);
  {
    std::ofstream(path("word.csv")) << "# pitch=0.1\n1,abc\n";
  }
  EXPECT_THROW(read_raster_csv(path("word.csv")), FormatError);
}

TEST_F(RasterIo, MissingFileIsAnIoError) {
  EXPECT_THROW(read_raster(path("missing.vlat")), IoError);
  EXPECT_THROW(read_raster_csv(path("missing.csv")), IoError);
  EXPECT_THROW(write_raster(DetectorImage(2, 2, 1.0, ImageKind::normalized), path("no/such/dir.vlat")), IoError);
}

TEST_F(RasterIo, PgmHeaderAndScaling) {
  DetectorImage img(3, 1, 1.0, ImageKind::normalized);
  img.values = {0.0, 0.5, 1.0};
  write_pgm(img, path("p.pgm"));
  std::ifstream in(path("p.pgm"), std::ios::binary);
  std::string magic;
  int w, h, maxv;
  in >> magic >> w >> h >> maxv;
  in.get();
  unsigned char px[3];
  in.read(reinterpret_cast<char*>(px), 3);
  EXPECT_EQ(magic, "P5");
  EXPECT_EQ(w, 3);
  EXPECT_EQ(h, 1);
  EXPECT_EQ(px[0], 0);
  EXPECT_EQ(px[1], 128);
  EXPECT_EQ(px[2], 255);
}

}  // namespace
