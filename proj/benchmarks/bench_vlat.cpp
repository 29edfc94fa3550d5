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

#include <benchmark/benchmark.h>

#include "vlat/fitkit.hpp"
#include "vlat/oam.hpp"
#include "vlat/reduce.hpp"
#include "vlat/vortexmap.hpp"

namespace {

using namespace vlat;

LatticeTruth scenario() {
  const double k = kTwoPi / 1.83;
  LatticeTruth t;
  t.eta1 = {0.0, k};
  t.eta2 = {k, 0.0};
  t.alpha1p = 0.4;
  t.alpha2p = -1.1;
  t.a1 = t.a2 = t.a3 = 0.2861;
  t.mu = {8.0, 8.0};
  t.s = 8.0;
  t.mean_counts = 1.5;
  return t;
}

const Illumination kIllumination{{1.0, 0.08, -0.05}, {1.0, -0.06, -0.1}};

void BM_ClosedForm(benchmark::State& state) {
  double ks = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oam_result(ks, 1.2));
    ks = ks < 8.0 ? ks + 0.01 : 0.1;
  }
}
BENCHMARK(BM_ClosedForm);

void BM_PolarQuadrature(benchmark::State& state) {
  const auto beam = BeamParams::isotropic_coherence(1.0, 1.0);
  QuadratureSpec spec;
  spec.radial_nodes = static_cast<std::size_t>(state.range(0));
  const auto psi = test_wavefunction(beam, InterferometerConfig::with_phase_difference(2.0, kPi / 2));
  for (auto _ : state) benchmark::DoNotOptimize(oam_quadrature(psi, spec));
}
BENCHMARK(BM_PolarQuadrature)->Arg(501)->Arg(2001)->Unit(benchmark::kMillisecond);

void BM_Synthesize(benchmark::State& state) {
  const LatticeTruth t = scenario();
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_image(t, 800, 800, 0.02, 42, kIllumination));
}
BENCHMARK(BM_Synthesize)->Unit(benchmark::kMillisecond);

void BM_Reduce(benchmark::State& state) {
  const auto lattice = synthesize_image(scenario(), 800, 800, 0.02, 42, kIllumination);
  const auto flat = flat_image(800, 800, 0.02, 1.5, 43, kIllumination);
  for (auto _ : state) benchmark::DoNotOptimize(reduce_pipeline(lattice, flat, ReductionConfig{10, 2, 0.05, 0.01}));
}
BENCHMARK(BM_Reduce)->Unit(benchmark::kMillisecond);

void BM_Fit(benchmark::State& state) {
  const auto lattice = synthesize_image(scenario(), 800, 800, 0.02, 42, kIllumination);
  const auto flat = flat_image(800, 800, 0.02, 1.5, 43, kIllumination);
  const auto reduced = reduce_pipeline(lattice, flat, ReductionConfig{10, 2, 0.05, 0.01});
  for (auto _ : state) benchmark::DoNotOptimize(fit_lattice(reduced, initial_guess(reduced)));
}
BENCHMARK(BM_Fit)->Unit(benchmark::kMillisecond);

void BM_OamMap(benchmark::State& state) {
  const double k = kTwoPi / 1.83, radius = default_domain_radius(k);
  const int across = static_cast<int>(state.range(0));
  const double pitch = 2.0 * radius / across;
  const auto n = static_cast<std::size_t>(std::ceil((1.83 + 2 * radius) / pitch)) + 1;
  const ComplexField field = reconstruct_test_field(scenario(), GridSpec{n, n, pitch, {}});
  for (auto _ : state) benchmark::DoNotOptimize(oam_map(field, radius, 0.0, 5));
}
BENCHMARK(BM_OamMap)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
