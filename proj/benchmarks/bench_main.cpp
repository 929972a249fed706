/******************************************************************************
 * Copyright 2026 The sdl-drive Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/
#include <benchmark/benchmark.h>

#include <vector>

#include "sdl/control.hpp"
#include "sdl/envmap.hpp"
#include "sdl/leap.hpp"
#include "sdl/random.hpp"
#include "sdl/self_organizing.hpp"
#include "sdl/sim.hpp"

namespace {

using namespace sdl;

void BM_LeapDistance(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  std::vector<double> w(dim), v(dim);
  std::vector<DistributionSummary> s(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    v[j] = rng.uniform(-5, 5);
    w[j] = rng.uniform(-5, 5);
    s[j].center = v[j];
    s[j].profile.above = {{0.5, 1.0, 1.5, 2.0}, {0.1, 0.1, 0.1, 0.1}};
    s[j].profile.below = {{0.5, 1.0, 1.5, 2.0}, {0.1, 0.1, 0.1, 0.1}};
  }
  for (auto _ : state) benchmark::DoNotOptimize(leap_distance(w, v, s));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(dim));
}
BENCHMARK(BM_LeapDistance)->RangeMultiplier(4)->Range(1, 256);

void BM_SelfOrganize(benchmark::State& state) {
  Rng rng(2);
  std::vector<double> xs;
  for (std::int64_t i = 0; i < state.range(0); ++i) {
    xs.push_back(i % 10 < 7 ? rng.normal(0.0, 1.0) : rng.normal(10.0, 1.0));
  }
  SOConfig cfg;
  cfg.window_halfwidth = 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(self_organize(xs, median(xs), cfg).center);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SelfOrganize)->RangeMultiplier(10)->Range(100, 100000)->Complexity();

void BM_FitSummary(benchmark::State& state) {
  Rng rng(3);
  std::vector<double> xs;
  for (std::int64_t i = 0; i < state.range(0); ++i) xs.push_back(rng.normal(0.0, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(fit_summary(xs, SOConfig{}, 4).center);
}
BENCHMARK(BM_FitSummary)->RangeMultiplier(10)->Range(100, 100000);

// Regions stay 16 pixels wide, so grid g has g*g perception nodes.
void BM_LearnRegionDb(benchmark::State& state) {
  const auto g = static_cast<std::size_t>(state.range(0));
  const auto corpus = make_texture_corpus(20, 16 * g, 0.2, 4);
  for (auto _ : state) {
    auto db = learn_region_db(corpus, all_mappings(), RegionGrid{g, g});
    benchmark::DoNotOptimize(db.classes.size());
  }
  state.SetComplexityN(static_cast<std::int64_t>(g * g));
}
BENCHMARK(BM_LearnRegionDb)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Complexity()->Unit(benchmark::kMillisecond);

void BM_Decide(benchmark::State& state) {
  DistanceVector d{};
  const double values[] = {1.5, 2.0, 0.3, 1.2, 0.8, 3.0};
  for (std::size_t k = 0; k < kObjectiveCount; ++k) d[k].normalized = values[k];
  for (auto _ : state) benchmark::DoNotOptimize(decide(d, 1.0).targets.size());
}
BENCHMARK(BM_Decide);

void BM_ExpertRun(benchmark::State& state) {
  const Scenario sc = make_scenario(ScenarioFamily::kFollow, 7);
  for (auto _ : state) benchmark::DoNotOptimize(run_expert(sc).samples.size());
}
BENCHMARK(BM_ExpertRun)->Unit(benchmark::kMillisecond);

void BM_ControlledRun(benchmark::State& state) {
  std::vector<Trace> demos;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    demos.push_back(run_expert(make_scenario(static_cast<ScenarioFamily>(seed % 3), seed)));
  }
  const auto kb = learn_knowledge(demos, LearnConfig{});
  const Scenario sc = make_scenario(ScenarioFamily::kFreeRoad, 99);
  for (auto _ : state) benchmark::DoNotOptimize(run_controlled(sc, kb).metrics.rms_jerk);
}
BENCHMARK(BM_ControlledRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
