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
#include <vector>

#include "generators.hpp"
#include "vlat/fft.hpp"

namespace {

using namespace vlat;

TEST(Fft, RoundTripRecoversInput) {
  prop::for_all(20, 1, [](prop::Gen& g) {
    const auto w = static_cast<std::size_t>(g.integer(1, 33));
    const auto h = static_cast<std::size_t>(g.integer(1, 33));
    std::vector<double> v(w * h);
    for (auto& x : v) x = g.uniform(-5, 5);
    const auto back = irfft2(rfft2(v, w, h));
    ASSERT_EQ(back.size(), v.size());
    for (std::size_t k = 0; k < v.size(); ++k) EXPECT_NEAR(back[k], v[k], 1e-12);
  });
}

TEST(Fft, DcBinIsTheSum) {
  std::vector<double> v{1, 2, 3, 4, 5, 6};
  const auto s = rfft2(v, 3, 2);
  EXPECT_NEAR(s.at(0, 0).real(), 21.0, 1e-12);
  EXPECT_NEAR(s.at(0, 0).imag(), 0.0, 1e-12);
}

TEST(Fft, SingleCosineLandsInOneBin) {
  const std::size_t w = 16, h = 8;
  std::vector<double> v(w * h);
  for (std::size_t j = 0; j < h; ++j)
    for (std::size_t i = 0; i < w; ++i) v[j * w + i] = std::cos(kTwoPi * (3.0 * i / w + 1.0 * j / h));
  const auto s = rfft2(v, w, h);
  EXPECT_NEAR(std::abs(s.at(1, 3)), w * h / 2.0, 1e-9);
  double rest = 0;
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < s.cols(); ++c)
      if (!(r == 1 && c == 3)) rest += std::abs(s.at(r, c));
  EXPECT_LT(rest, 1e-9);
}

TEST(Fft, SignedFrequency) {
  EXPECT_EQ(signed_frequency(0, 8), 0);
  EXPECT_EQ(signed_frequency(4, 8), 4);
  EXPECT_EQ(signed_frequency(5, 8), -3);
  EXPECT_EQ(signed_frequency(4, 7), -3);
}

}  // namespace
