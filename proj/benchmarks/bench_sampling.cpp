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

#include "qcorr/rng.hpp"
#include "qcorr/sampling.hpp"

namespace {

void BM_GaussianStream(benchmark::State& state) {
  qcorr::RandomStream rng(qcorr::SeedPath(5).child("bench"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.gaussian());
  }
}
BENCHMARK(BM_GaussianStream);

void BM_GramSchmidt(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const qcorr::Matrix g = qcorr::sample_gaussian_matrix(n, n, qcorr::SeedPath(6).child("bench"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcorr::gram_schmidt(g).data());
  }
}
BENCHMARK(BM_GramSchmidt)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_CoupledSvd(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        qcorr::sample_coupled_svd(n, qcorr::SeedPath(7).child(k++)).sigma.data());
  }
}
BENCHMARK(BM_CoupledSvd)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
