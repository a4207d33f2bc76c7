// Copyright 2026 The qcorr Authors
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

#include "qcorr/correlations.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/sampling.hpp"
#include "qcorr/values.hpp"

namespace {

void BM_ClassicalValueExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const qcorr::Matrix a = qcorr::sample_gaussian_matrix(n, n, qcorr::SeedPath(1).child("bench"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcorr::classical_value_exact(a).omega);
  }
}
BENCHMARK(BM_ClassicalValueExact)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

void BM_PiNormExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = 2;
  const qcorr::Matrix gamma =
      qcorr::gram(qcorr::sample_haar_sphere_ensemble(n, m, qcorr::SeedPath(2).child("bench")))
          .entries();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcorr::pi_norm_exact(gamma).value);
  }
}
BENCHMARK(BM_PiNormExact)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_ChshScanFull(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const qcorr::Matrix gamma =
      qcorr::gram(qcorr::sample_haar_sphere_ensemble(n, 4, qcorr::SeedPath(3).child("bench")))
          .entries();
  qcorr::ChshOptions options;
  options.mode = qcorr::ChshOptions::Mode::kFull;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcorr::chsh_scan(gamma, options).value);
  }
}
BENCHMARK(BM_ChshScanFull)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_QuantumValueUpper(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const qcorr::Matrix a = qcorr::sample_gaussian_matrix(n, n, qcorr::SeedPath(4).child("bench"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcorr::quantum_value_upper(a).value);
  }
}
BENCHMARK(BM_QuantumValueUpper)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
