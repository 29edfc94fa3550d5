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

#include "vlat/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

#include "vlat/error.hpp"

namespace vlat {
namespace {

// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

}  // namespace

HalfSpectrum rfft2(std::span<const double> values, std::size_t width, std::size_t height) {
  if (width == 0 || height == 0 || values.size() != width * height)
    throw InvalidArgument("rfft2: raster size does not match dimensions");
  HalfSpectrum out;
  out.width = width;
  out.height = height;
  out.bins.resize(height * out.cols());
  std::vector<double> in(values.begin(), values.end());
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_r2c_2d(static_cast<int>(height), static_cast<int>(width), in.data(),
                                    reinterpret_cast<fftw_complex*>(out.bins.data()), FFTW_ESTIMATE));
  }
  if (!plan) throw NumericalError("rfft2: FFTW planning failed");
  fftw_execute(plan.get());
  return out;
}

std::vector<double> irfft2(const HalfSpectrum& spectrum) {
  const std::size_t w = spectrum.width;
  const std::size_t h = spectrum.height;
  if (w == 0 || h == 0 || spectrum.bins.size() != h * spectrum.cols())
    throw InvalidArgument("irfft2: malformed spectrum");
  std::vector<cplx> in = spectrum.bins;  // c2r destroys its input
  std::vector<double> out(w * h);
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_c2r_2d(static_cast<int>(h), static_cast<int>(w),
                                    reinterpret_cast<fftw_complex*>(in.data()), out.data(), FFTW_ESTIMATE));
  }
  if (!plan) throw NumericalError("irfft2: FFTW planning failed");
  fftw_execute(plan.get());
  const double scale = 1.0 / static_cast<double>(w * h);
  std::ranges::for_each(out, [scale](double& v) { v *= scale; });
  return out;
}

}  // namespace vlat
