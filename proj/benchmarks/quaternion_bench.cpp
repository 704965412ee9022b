// Copyright 2026 The qbr Authors
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

#include "qbr/quaternion.hpp"
#include "qbr/rng.hpp"

namespace {

qbr::QuaternionBatch random_batch(std::size_t k, qbr::Rng& rng) {
  qbr::QuaternionBatch q(k);
  for (auto* plane : {&q.re, &q.im_i, &q.im_j, &q.im_k}) {
    for (double& x : *plane) x = qbr::uniform_range(rng, -1.0, 1.0);
  }
  return q;
}

void BM_HamiltonProduct(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  qbr::Rng rng = qbr::make_rng(1, 0);
  const auto p = random_batch(k, rng);
  const auto q = random_batch(k, rng);
  qbr::QuaternionBatch out(k);
  for (auto _ : state) {
    qbr::hamilton_product_into(p, q, out);
    benchmark::DoNotOptimize(out.re.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(k));
}
BENCHMARK(BM_HamiltonProduct)->Arg(25)->Arg(125)->Arg(1024);

void BM_Normalize(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  qbr::Rng rng = qbr::make_rng(2, 0);
  const auto p = random_batch(k, rng);
  qbr::QuaternionBatch out(k);
  for (auto _ : state) {
    qbr::normalize_into(p, qbr::kNormEps, out);
    benchmark::DoNotOptimize(out.re.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(k));
}
BENCHMARK(BM_Normalize)->Arg(125);

void BM_Inner(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  qbr::Rng rng = qbr::make_rng(3, 0);
  const auto p = random_batch(k, rng);
  const auto q = random_batch(k, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qbr::inner(p, q));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(k));
}
BENCHMARK(BM_Inner)->Arg(125);

}  // namespace

BENCHMARK_MAIN();
