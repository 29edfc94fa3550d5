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

#include "vlat/fitkit.hpp"

#include <nlohmann/json.hpp>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "vlat/error.hpp"
#include "vlat/fft.hpp"

namespace vlat {

std::array<double, kFitParams> pack(const LatticeTruth& t) {
  return {t.eta1.x, t.eta1.y, t.eta2.x, t.eta2.y, t.alpha1p, t.alpha2p, t.a1, t.a2, t.a3, t.mu.x, t.mu.y, t.s};
}

LatticeTruth unpack(const std::array<double, kFitParams>& p, double mean_counts) {
  LatticeTruth t;
  t.eta1 = {p[0], p[1]};
  t.eta2 = {p[2], p[3]};
  t.alpha1p = p[4];
  t.alpha2p = p[5];
  t.a1 = p[6];
  t.a2 = p[7];
  t.a3 = p[8];
  t.mu = {p[9], p[10]};
  t.s = p[11];
  t.mean_counts = mean_counts;
  return t;
}

double FitResult::period1() const { return kTwoPi / norm(params.eta1); }
double FitResult::period2() const { return kTwoPi / norm(params.eta2); }

namespace {

// Full-plane access to a half spectrum through Hermitian symmetry.
struct Spectrum {
  HalfSpectrum half;

  long w() const { return static_cast<long>(half.width); }
  long h() const { return static_cast<long>(half.height); }
  double mag(long ky, long kx) const {
    if (kx < 0) {
      kx = -kx;
      ky = -ky;
    }
    kx = ((kx % w()) + w()) % w();
    ky = ((ky % h()) + h()) % h();
    if (kx >= static_cast<long>(half.cols())) {
      kx = (w() - kx) % w();
      ky = (h() - ky) % h();
    }
    return std::abs(half.at(static_cast<std::size_t>(ky), static_cast<std::size_t>(kx)));
  }
};

struct Peak {
  long ky = 0, kx = 0;  // signed bin indices, canonical half plane
  double mag = 0.0;
};

// Canonical representative of +-(ky, kx): kx > 0, or kx == 0 and ky > 0.
Peak canonical(long ky, long kx, double m) {
  if (kx < 0 || (kx == 0 && ky < 0)) return {-ky, -kx, m};
  return {ky, kx, m};
}

bool near(const Peak& a, const Peak& b, long radius) {
  auto close = [&](long dy, long dx) { return std::max(std::labs(dy), std::labs(dx)) <= radius; };
  return close(a.ky - b.ky, a.kx - b.kx) || close(a.ky + b.ky, a.kx + b.kx);
}

double parabolic_offset(double m_minus, double m0, double m_plus) {
  const double den = m_minus - 2.0 * m0 + m_plus;
  if (den >= 0.0) return 0.0;
  return std::clamp(0.5 * (m_minus - m_plus) / den, -0.5, 0.5);
}

std::vector<double> masked_values(const DetectorImage& image) {
  std::vector<double> v(image.values.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = image.mask[k] ? image.values[k] : 0.0;
  return v;
}

}  // namespace

LatticeTruth initial_guess(const DetectorImage& image) {
  image.validate();
  const std::vector<double> data = masked_values(image);
  const Spectrum spec{rfft2(data, image.width, image.height)};
  const long w = spec.w();
  const long h = spec.h();

  // Local maxima over the canonical half plane.
  std::vector<Peak> candidates;
  for (long ky = -(h - 1) / 2; ky <= h / 2; ++ky)
    for (long kx = 0; kx <= w / 2; ++kx) {
      if (kx == 0 && ky <= 0) continue;
      const double m = spec.mag(ky, kx);
      if (m == 0.0) continue;
      bool is_max = true;
      for (long dy = -1; dy <= 1 && is_max; ++dy)
        for (long dx = -1; dx <= 1; ++dx)
          if ((dy || dx) && spec.mag(ky + dy, kx + dx) > m) {
            is_max = false;
            break;
          }
      if (is_max) candidates.push_back(canonical(ky, kx, m));
    }
  std::sort(candidates.begin(), candidates.end(), [](const Peak& a, const Peak& b) { return a.mag > b.mag; });

  std::vector<Peak> peaks;
  for (const auto& c : candidates) {
    if (peaks.size() == 3) break;
    if (std::none_of(peaks.begin(), peaks.end(), [&](const Peak& p) { return near(p, c, 1); })) peaks.push_back(c);
  }

  // Noise level: RMS magnitude away from the selected peaks.
  double noise = 0.0;
  std::size_t n_noise = 0;
  for (long ky = -(h - 1) / 2; ky <= h / 2; ++ky)
    for (long kx = 0; kx <= w / 2; ++kx) {
      if (kx == 0 && ky <= 0) continue;
      const Peak here{ky, kx, 0.0};
      if (std::any_of(peaks.begin(), peaks.end(), [&](const Peak& p) { return near(p, here, 2); })) continue;
      noise += std::pow(spec.mag(ky, kx), 2);
      ++n_noise;
    }
  noise = n_noise ? std::sqrt(noise / static_cast<double>(n_noise)) : 0.0;
  const double threshold = 5.0 * noise;
  std::erase_if(peaks, [&](const Peak& p) { return !(p.mag > threshold); });
  if (peaks.size() < 2) throw InsufficientSignal("initial_guess: fewer than two spectral peaks above the noise");

  const double fx_unit = kTwoPi / (static_cast<double>(w) * image.pitch);
  const double fy_unit = kTwoPi / (static_cast<double>(h) * image.pitch);
  auto refined = [&](const Peak& p) {
    const double dx = parabolic_offset(spec.mag(p.ky, p.kx - 1), p.mag, spec.mag(p.ky, p.kx + 1));
    const double dy = parabolic_offset(spec.mag(p.ky - 1, p.kx), p.mag, spec.mag(p.ky + 1, p.kx));
    return Vec2{(static_cast<double>(p.kx) + dx) * fx_unit, (static_cast<double>(p.ky) + dy) * fy_unit};
  };

  // The two prism wavevectors are the two shortest of the (up to) three
  // fringe families; the third is their difference.
  std::vector<Vec2> vecs;
  for (const auto& p : peaks) vecs.push_back(refined(p));
  std::sort(vecs.begin(), vecs.end(), [](Vec2 a, Vec2 b) { return norm(a) < norm(b); });
  Vec2 eta1 = vecs[0];
  Vec2 eta2 = vecs[1];
  if (vecs.size() == 3) {
    auto miss = [&](Vec2 e2) { return std::min(norm(eta1 - e2 - vecs[2]), norm(eta1 - e2 + vecs[2])); };
    if (miss(-eta2) < miss(eta2)) eta2 = -eta2;
  }

  // Envelope from the moments of I^2.
  double m0 = 0.0, mx = 0.0, my = 0.0, m2 = 0.0;
  for (std::size_t j = 0; j < image.height; ++j)
    for (std::size_t i = 0; i < image.width; ++i) {
      if (!image.included(i, j)) continue;
      const double q = image.at(i, j) * image.at(i, j);
      const Vec2 r = image.pixel_center(i, j);
      m0 += q;
      mx += q * r.x;
      my += q * r.y;
      m2 += q * dot(r, r);
    }
  if (!(m0 > 0.0)) throw InsufficientSignal("initial_guess: image carries no signal");
  LatticeTruth g;
  g.mu = {mx / m0, my / m0};
  const double s2 = m2 / m0 - dot(g.mu, g.mu);
  if (!(s2 > 0.0)) throw InsufficientSignal("initial_guess: degenerate envelope");
  g.s = std::sqrt(s2);
  g.eta1 = eta1;
  g.eta2 = eta2;

  // Demodulate at each wavevector: X = sum I e^{-i eta.r} ~ (a/2) e^{i alpha} sum env.
  double env_sum = 0.0;
  cplx x1{}, x2{}, x3{};
  for (std::size_t j = 0; j < image.height; ++j)
    for (std::size_t i = 0; i < image.width; ++i) {
      if (!image.included(i, j)) continue;
      const Vec2 r = image.pixel_center(i, j);
      const Vec2 d = r - g.mu;
      env_sum += std::exp(-dot(d, d) / s2);
      const double v = image.at(i, j);
      x1 += v * std::polar(1.0, -dot(eta1, r));
      x2 += v * std::polar(1.0, -dot(eta2, r));
      x3 += v * std::polar(1.0, -dot(eta1 - eta2, r));
    }
  g.alpha1p = std::arg(x1);
  g.alpha2p = std::arg(x2);
  g.a1 = std::clamp(2.0 * std::abs(x1) / env_sum, 0.0, 1.0);
  g.a2 = std::clamp(2.0 * std::abs(x2) / env_sum, 0.0, 1.0);
  g.a3 = std::clamp(2.0 * std::abs(x3) / env_sum, 0.0, 1.0);
  return g;
}

namespace {

using Params = Eigen::Matrix<double, kFitParams, 1>;
using Normal = Eigen::Matrix<double, kFitParams, kFitParams>;

struct Sample {
  Vec2 r;
  double value;
};

// Residual and Jacobian row of one pixel.
double model_and_gradient(const Params& p, Vec2 r, Eigen::Ref<Params> grad) {
  const Vec2 e1{p[0], p[1]}, e2{p[2], p[3]};
  const double s = p[11];
  const Vec2 d{r.x - p[9], r.y - p[10]};
  const double d2 = dot(d, d);
  const double env = std::exp(-d2 / (s * s));
  const double p1 = dot(e1, r) + p[4];
  const double p2 = dot(e2, r) + p[5];
  const double p3 = p1 - p2;
  const double c1 = std::cos(p1), c2 = std::cos(p2), c3 = std::cos(p3);
  const double s1 = std::sin(p1), s2 = std::sin(p2), s3 = std::sin(p3);
  const double f = env * (p[6] * c1 + p[7] * c2 + p[8] * c3);
  const double g1 = env * (-p[6] * s1 - p[8] * s3);  // d f / d p1
  const double g2 = env * (-p[7] * s2 + p[8] * s3);  // d f / d p2
  grad << g1 * r.x, g1 * r.y, g2 * r.x, g2 * r.y, g1, g2, env * c1, env * c2, env * c3, f * 2.0 * d.x / (s * s),
      f * 2.0 * d.y / (s * s), f * 2.0 * d2 / (s * s * s);
  return f;
}

struct Linearization {
  double cost = 0.0;  // sum r^2
  Normal jtj = Normal::Zero();
  Params jtr = Params::Zero();
};

Linearization linearize(const Params& p, const std::vector<Sample>& samples) {
  Linearization lin;
  Params g;
  for (const auto& smp : samples) {
    const double res = model_and_gradient(p, smp.r, g) - smp.value;
    lin.cost += res * res;
    lin.jtj.selfadjointView<Eigen::Lower>().rankUpdate(g);
    lin.jtr += res * g;
  }
  lin.jtj = lin.jtj.selfadjointView<Eigen::Lower>();
  return lin;
}

double cost_at(const Params& p, const std::vector<Sample>& samples) {
  double c = 0.0;
  Params g;
  for (const auto& smp : samples) {
    const double res = model_and_gradient(p, smp.r, g) - smp.value;
    c += res * res;
  }
  return c;
}

}  // namespace

FitResult fit_lattice(const DetectorImage& image, const LatticeTruth& guess, const FitOptions& options) {
  image.validate();
  const auto g0 = pack(guess);
  for (double v : g0)
    if (!std::isfinite(v)) throw InvalidArgument("fit_lattice: initial guess is not finite");
  if (!(guess.s > 0.0)) throw InvalidArgument("fit_lattice: envelope width must be positive");

  std::vector<Sample> samples;
  for (std::size_t j = 0; j < image.height; ++j)
    for (std::size_t i = 0; i < image.width; ++i)
      if (image.included(i, j)) samples.push_back({image.pixel_center(i, j), image.at(i, j)});
  if (samples.size() <= kFitParams) throw InvalidArgument("fit_lattice: not enough included pixels");

  Params p = Eigen::Map<const Params>(g0.data());
  Linearization lin = linearize(p, samples);
  double lambda = 1e-3;
  FitResult out;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    if (lin.jtr.norm() < options.gradient_tolerance) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    bool stalled = false;
    while (!accepted) {
      Normal a = lin.jtj;
      for (std::size_t k = 0; k < kFitParams; ++k) a(k, k) += lambda * std::max(lin.jtj(k, k), 1e-12);
      const Params step = a.ldlt().solve(-lin.jtr);
      const Params trial = p + step;
      const double c = trial.allFinite() && trial[11] != 0.0 ? cost_at(trial, samples)
                                                             : std::numeric_limits<double>::infinity();
      if (c < lin.cost) {
        const double rel = (lin.cost - c) / std::max(lin.cost, std::numeric_limits<double>::min());
        p = trial;
        lin = linearize(p, samples);
        lambda = std::max(lambda / 10.0, 1e-15);
        accepted = true;
        if (rel < options.relative_tolerance) stalled = true;
      } else {
        lambda *= 10.0;
        if (lambda > 1e20) {
          // No descent direction left at working precision: a stationary point.
          stalled = true;
          break;
        }
      }
    }
    if (stalled) {
      out.converged = true;
      ++it;
      break;
    }
  }

  p[11] = std::abs(p[11]);
  std::array<double, kFitParams> fitted{};
  std::copy(p.data(), p.data() + kFitParams, fitted.begin());
  out.params = unpack(fitted, guess.mean_counts);
  out.params.alpha1p = wrap_phase(out.params.alpha1p);
  out.params.alpha2p = wrap_phase(out.params.alpha2p);
  out.iterations = it;
  out.residual_norm = std::sqrt(lin.cost);
  out.gradient_norm = lin.jtr.norm();

  const double dof = static_cast<double>(samples.size() - kFitParams);
  const double variance = lin.cost / dof;
  Eigen::FullPivLU<Normal> lu(lin.jtj);
  if (lu.isInvertible()) {
    const Normal cov = lu.inverse() * variance;
    for (std::size_t k = 0; k < kFitParams; ++k) out.std_errors[k] = std::sqrt(std::max(cov(k, k), 0.0));
  } else {
    out.std_errors.fill(std::numeric_limits<double>::infinity());
  }
  return out;
}

double contrast(const LatticeTruth& t) {
  // For fixed t1, a2 cos t2 + a3 cos(t1 - t2) ranges over +-|a2 + a3 e^{i t1}|.
  const int n = 100000;
  double gmax = -std::numeric_limits<double>::infinity();
  double gmin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const double t1 = kTwoPi * k / n;
    const double inner = std::abs(t.a2 + t.a3 * std::polar(1.0, t1));
    const double base = t.a1 * std::cos(t1);
    gmax = std::max(gmax, base + inner);
    gmin = std::min(gmin, base - inner);
  }
  return (gmax - gmin) / (2.0 + gmax + gmin);
}

std::string fit_to_json(const FitResult& fit) {
  nlohmann::ordered_json doc;
  const auto p = pack(fit.params);
  for (std::size_t k = 0; k < kFitParams; ++k) doc[std::string(kFitParamNames[k])] = p[k];
  for (std::size_t k = 0; k < kFitParams; ++k) doc["stderr_" + std::string(kFitParamNames[k])] = fit.std_errors[k];
  doc["period1"] = fit.period1();
  doc["period2"] = fit.period2();
  doc["contrast"] = contrast(fit);
  doc["residual_norm"] = fit.residual_norm;
  doc["gradient_norm"] = fit.gradient_norm;
  doc["converged"] = fit.converged;
  doc["iterations"] = fit.iterations;
  return doc.dump(2) + "\n";
}

FitResult fit_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("fit document: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("fit document: expected a JSON object");
  auto number = [&](const std::string& key) {
    const auto it = doc.find(key);
    if (it == doc.end() || !it->is_number()) throw FormatError("fit document: missing numeric key '" + key + "'");
    return it->get<double>();
  };
  FitResult fit;
  std::array<double, kFitParams> p{};
  for (std::size_t k = 0; k < kFitParams; ++k) {
    p[k] = number(std::string(kFitParamNames[k]));
    const std::string se = "stderr_" + std::string(kFitParamNames[k]);
    if (doc.contains(se))  // non-finite errors serialize as null
      fit.std_errors[k] = doc[se].is_number() ? doc[se].get<double>() : std::numeric_limits<double>::infinity();
  }
  fit.params = unpack(p);
  fit.residual_norm = doc.value("residual_norm", 0.0);
  fit.gradient_norm = doc.value("gradient_norm", 0.0);
  fit.iterations = doc.value("iterations", 0);
  const auto conv = doc.find("converged");
  if (conv == doc.end() || !conv->is_boolean()) throw FormatError("fit document: missing boolean key 'converged'");
  fit.converged = conv->get<bool>();
  return fit;
}

}  // namespace vlat
