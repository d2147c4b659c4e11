// Copyright 2026 The Spectrum Sim Authors. All rights reserved.
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

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "spectrum/agent.h"
#include "spectrum/config.h"
#include "spectrum/qnetwork.h"
#include "spectrum/rng.h"
#include "spectrum/simulator.h"

namespace spectrum {
namespace {

NetworkShape ShapeFor(const benchmark::State& state) {
  return {static_cast<int>(state.range(0)), static_cast<int>(state.range(1)),
          10, 10};
}

TrainingBatch Batch(const NetworkShape& shape, int episodes, int slots,
                    Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  TrainingBatch batch;
  for (int e = 0; e < episodes; ++e) {
    batch.episodes.emplace_back();
    for (int t = 0; t < slots; ++t) {
      std::vector<double> x(shape.input_size());
      for (double& v : x) v = u(rng);
      batch.episodes.back().push_back(
          {x, static_cast<int>(rng() % (shape.num_channels + 1)), u(rng)});
    }
  }
  return batch;
}

void BM_Forward(benchmark::State& state) {
  const NetworkShape shape = ShapeFor(state);
  Rng rng = MakeStream(1, StreamKind::kInit);
  const auto params = QNetworkParams::Initialize(shape, rng);
  const std::vector<double> x(shape.input_size(), 0.5);
  LstmState s = LstmState::Zero(shape.hidden);
  for (auto _ : state) {
    ForwardResult r = Forward(params, x, s);
    benchmark::DoNotOptimize(r.q.data());
  }
}
BENCHMARK(BM_Forward)->Args({5, 32})->Args({50, 100});

// One iteration's worth of BPTT: E=8 episodes of T=20 slots.
void BM_Backward(benchmark::State& state) {
  const NetworkShape shape = ShapeFor(state);
  Rng rng = MakeStream(1, StreamKind::kInit);
  const auto params = QNetworkParams::Initialize(shape, rng);
  const TrainingBatch batch = Batch(shape, 8, 20, rng);
  for (auto _ : state) {
    Gradients g = Backward(params, batch);
    benchmark::DoNotOptimize(g.loss);
  }
}
BENCHMARK(BM_Backward)->Args({5, 32})->Unit(benchmark::kMillisecond);

void BM_SelectChannel(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  Rng rng = MakeStream(1, StreamKind::kPolicy);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> q(k + 1);
  for (double& v : q) v = u(rng);
  std::vector<int> loads(k);
  for (int& l : loads) l = 1 + static_cast<int>(rng() % 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SelectChannel(q, loads, m));
  }
  state.SetComplexityN(k);
}
BENCHMARK(BM_SelectChannel)
    ->ArgsProduct({benchmark::CreateRange(8, 4096, 8), {4}})
    ->Complexity(benchmark::oN);

// Full desk-scale training iteration (N=10, K=5, E=8, T=20).
void BM_TrainingIteration(benchmark::State& state) {
  SimConfig cfg;
  cfg.iterations = 1;
  cfg.log_rows = false;
  for (auto _ : state) {
    TrainingResult r = RunTraining(cfg, 1);
    benchmark::DoNotOptimize(r.snapshots.data());
  }
}
BENCHMARK(BM_TrainingIteration)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace spectrum

BENCHMARK_MAIN();
