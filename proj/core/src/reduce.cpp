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

#include "vlat/reduce.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "vlat/error.hpp"
#include "vlat/fft.hpp"

namespace vlat {

void ReductionConfig::validate() const {
  if (bin_factor < 1) throw InvalidArgument("bin_factor must be >= 1");
  if (poly_degree < 0) throw InvalidArgument("poly_degree must be >= 0");
  if (!(noise_floor >= 0.0 && noise_floor < 1.0)) throw InvalidArgument("noise_floor must lie in [0, 1)");
  if (!(guard_fraction >= 0.0 && guard_fraction < 1.0)) throw InvalidArgument("guard_fraction must lie in [0, 1)");
}

DetectorImage bin(const DetectorImage& image, int factor) {
  image.validate();
  if (factor < 1) throw InvalidArgument("bin: factor must be >= 1");
  const auto f = static_cast<std::size_t>(factor);
  if (f > image.width || f > image.height) throw InvalidArgument("bin: factor exceeds image dimensions");
  DetectorImage out(image.width / f, image.height / f, image.pitch * factor, image.kind);
  for (std::size_t j = 0; j < out.height; ++j)
    for (std::size_t i = 0; i < out.width; ++i) {
      double sum = 0.0;
      bool keep = true;
      for (std::size_t jj = j * f; jj < (j + 1) * f; ++jj)
        for (std::size_t ii = i * f; ii < (i + 1) * f; ++ii) {
          sum += image.at(ii, jj);
          keep = keep && image.included(ii, jj);
        }
      out.at(i, j) = sum;
      out.mask[j * out.width + i] = keep;
    }
  return out;
}

DetectorImage flat_field(const DetectorImage& image, const DetectorImage& reference, double guard_fraction) {
  image.validate();
  reference.validate();
  if (image.width != reference.width || image.height != reference.height)
    throw InvalidArgument("flat_field: image and reference dimensions differ");
  double mean = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < reference.values.size(); ++k)
    if (reference.mask[k]) {
      mean += reference.values[k];
      ++n;
    }
  if (n == 0) throw InvalidArgument("flat_field: reference has no included pixels");
  mean /= static_cast<double>(n);
  const double guard = guard_fraction * mean;

  DetectorImage out(image.width, image.height, image.pitch, ImageKind::normalized);
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    const double r = reference.values[k];
    const bool keep = image.mask[k] && reference.mask[k] && r > guard && r > 0.0;
    out.mask[k] = keep;
    out.values[k] = keep ? image.values[k] / r : 0.0;
  }
  return out;
}

DetectorImage remove_vertical_drift(const DetectorImage& image, int poly_degree) {
  image.validate();
  if (poly_degree < 0) throw InvalidArgument("remove_vertical_drift: degree must be >= 0");
  std::vector<double> v, mean;
  for (std::size_t j = 0; j < image.height; ++j) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < image.width; ++i)
      if (image.included(i, j)) {
        sum += image.at(i, j);
        ++n;
      }
    if (n == 0) continue;
    v.push_back(unit_coordinate(j, image.height));
    mean.push_back(sum / static_cast<double>(n));
  }
  const auto cols = static_cast<Eigen::Index>(poly_degree) + 1;
  if (static_cast<Eigen::Index>(v.size()) < cols)
    throw InvalidArgument("remove_vertical_drift: degree must be below the number of usable rows");

  Eigen::MatrixXd a(static_cast<Eigen::Index>(v.size()), cols);
  Eigen::VectorXd b(static_cast<Eigen::Index>(v.size()));
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    double p = 1.0;
    for (Eigen::Index c = 0; c < cols; ++c, p *= v[static_cast<std::size_t>(r)]) a(r, c) = p;
    b(r) = mean[static_cast<std::size_t>(r)];
  }
  const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(b);
  const std::vector<double> poly(coef.data(), coef.data() + coef.size());

  DetectorImage out = image;
  for (std::size_t j = 0; j < image.height; ++j) {
    const double p = polyval(poly, unit_coordinate(j, image.height));
    if (!(p > 0.0)) throw NumericalError("remove_vertical_drift: fitted profile is not positive at row " + std::to_string(j));
    for (std::size_t i = 0; i < image.width; ++i) out.at(i, j) = image.at(i, j) / p;
  }
  out.kind = ImageKind::normalized;
  return out;
}

DetectorImage normalize_zero_mean(const DetectorImage& image) {
  image.validate();
  if (image.kind == ImageKind::zero_mean) return image;
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < image.values.size(); ++k)
    if (image.mask[k]) {
      sum += image.values[k];
      ++n;
    }
  if (n == 0) throw InvalidArgument("normalize_zero_mean: no included pixels");
  const double mean = sum / static_cast<double>(n);
  if (!(mean > 0.0)) throw InvalidArgument("normalize_zero_mean: mean intensity must be positive");

  DetectorImage out = image;
  out.kind = ImageKind::zero_mean;
  double residual = 0.0;
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    out.values[k] = image.mask[k] ? image.values[k] / mean - 1.0 : 0.0;
    residual += out.values[k];
  }
  // Remove the rounding residue of the mean so it is zero to machine precision.
  residual /= static_cast<double>(n);
  for (std::size_t k = 0; k < out.values.size(); ++k)
    if (out.mask[k]) out.values[k] -= residual;
  return out;
}

DetectorImage fourier_denoise(const DetectorImage& image, double noise_floor) {
  image.validate();
  if (!(noise_floor >= 0.0 && noise_floor < 1.0)) throw InvalidArgument("fourier_denoise: noise_floor must lie in [0, 1)");
  if (noise_floor == 0.0) return image;

  const std::size_t w = image.width;
  const std::size_t h = image.height;
  HalfSpectrum spec = rfft2(image.values, w, h);
  double peak = 0.0;
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < spec.cols(); ++c)
      if (r != 0 || c != 0) peak = std::max(peak, std::abs(spec.at(r, c)));
  const double threshold = noise_floor * peak;

  // Columns 0 and w/2 (even w) hold both members of conjugate pairs; decide
  // on the member with the smaller row index so the pair is zeroed together.
  auto self_conjugate_col = [&](std::size_t c) { return c == 0 || (w % 2 == 0 && c == w / 2); };
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t c = 0; c < spec.cols(); ++c) {
      if (r == 0 && c == 0) continue;
      std::size_t rr = r;
      if (self_conjugate_col(c)) rr = std::min(r, (h - r) % h);
      if (std::abs(spec.at(rr, c)) < threshold) spec.at(r, c) = 0.0;
    }

  DetectorImage out = image;
  out.values = irfft2(spec);
  for (std::size_t k = 0; k < out.values.size(); ++k)
    if (!out.mask[k]) out.values[k] = 0.0;
  return out;
}

DetectorImage reduce_pipeline(const DetectorImage& lattice, const DetectorImage& flat, const ReductionConfig& cfg,
                              const StageObserver& observer) {
  cfg.validate();
  auto emit = [&](int stage, std::string_view name, const DetectorImage& img) {
    if (observer) observer(stage, name, img);
  };
  const DetectorImage binned = bin(lattice, cfg.bin_factor);
  emit(1, "bin", binned);
  const DetectorImage ratio = flat_field(binned, bin(flat, cfg.bin_factor), cfg.guard_fraction);
  emit(2, "flat_field", ratio);
  const DetectorImage detrended = remove_vertical_drift(ratio, cfg.poly_degree);
  emit(3, "remove_vertical_drift", detrended);
  const DetectorImage normalized = normalize_zero_mean(detrended);
  emit(4, "normalize_zero_mean", normalized);
  DetectorImage denoised = fourier_denoise(normalized, cfg.noise_floor);
  emit(5, "fourier_denoise", denoised);
  return denoised;
}

}  // namespace vlat
