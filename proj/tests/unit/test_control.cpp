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
#include <algorithm>
#include <array>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sdl/control.hpp"
#include "sdl/random.hpp"

using namespace sdl;

namespace {

DistanceVector normalized(const std::array<double, kObjectiveCount>& d) {
  DistanceVector out{};
  for (std::size_t k = 0; k < kObjectiveCount; ++k) {
    out[k].normalized = d[k];
    out[k].raw = d[k];
    out[k].center = 10.0 * static_cast<double>(k);
  }
  return out;
}

std::vector<ObjectiveKind> kinds(const AdjustmentPlan& p) {
  std::vector<ObjectiveKind> out;
  for (const auto& t : p.targets) out.push_back(t.objective);
  return out;
}

// Every objective for `state` centered at `centers` with margin `margin`.
KnowledgeBase synthetic_kb(DrivingState state, const ObjectiveVector& centers, double margin) {
  KnowledgeBase kb(1.0);
  for (auto k : kAllObjectives) {
    DistributionSummary s;
    s.center = at(centers, k);
    s.sample_count = 10;
    s.dispersion = margin;
    if (margin > 0.0) {
      s.profile.above = {{2 * margin}, {0.5}};
      s.profile.below = {{2 * margin}, {0.5}};
    }
    kb.set(state, k, s);
  }
  return kb;
}

}  // namespace

TEST_CASE("decide examples") {
  CHECK(kinds(decide(normalized({0.5, 2.0, 0.7, 0.1, 0.3, 0.2}), 1.0)) ==
        std::vector<ObjectiveKind>{ObjectiveKind::kSafety});
  CHECK(kinds(decide(normalized({1.5, 2.0, 0.7, 0.1, 0.3, 0.2}), 1.0)) ==
        std::vector<ObjectiveKind>{ObjectiveKind::kSafety});
  CHECK(decide(normalized({0.5, 0.9, 0.7, 0.1, 0.3, 0.2}), 1.0).empty());
  const auto three = decide(normalized({1.5, 2.0, 1.7, 0.1, 0.3, 0.2}), 1.0);
  CHECK(three.targets.size() == 3);
  CHECK(three.targets[1].target_value == 10.0);
  CHECK(three.targets[1].distance == 2.0);
  CHECK_THROWS_AS(decide(normalized({}), 0.0), std::invalid_argument);
}

TEST_CASE("even ties resolve by objective order") {
  CHECK(kinds(decide(normalized({0, 3, 0, 3, 0, 0}), 1.0)) ==
        std::vector<ObjectiveKind>{ObjectiveKind::kSafety});
  CHECK(kinds(decide(normalized({2, 2, 2, 2, 0, 0}), 1.0)) ==
        std::vector<ObjectiveKind>{ObjectiveKind::kEnergy});
}

TEST_CASE("decide is exhaustive over exceedance patterns") {
  Rng rng(64);
  for (unsigned mask = 0; mask < 64; ++mask) {
    std::array<double, kObjectiveCount> d{};
    std::vector<std::size_t> over;
    for (std::size_t k = 0; k < kObjectiveCount; ++k) {
      if (mask & (1u << k)) {
        d[k] = rng.uniform(1.01, 5.0);
        over.push_back(k);
      } else {
        d[k] = rng.uniform(0.0, 1.0);
      }
    }
    const auto plan = decide(normalized(d), 1.0);
    const auto n = plan.targets.size();
    CHECK((n == 0 || n == 1 || n == 3 || n == 5));
    for (const auto& t : plan.targets) CHECK(t.distance > 1.0);
    if (over.size() % 2 == 1) CHECK(n == over.size());
    if (!over.empty() && over.size() % 2 == 0) {
      REQUIRE(n == 1);
      for (auto k : over) CHECK(d[k] <= plan.targets[0].distance);
    }

    // Scaling distances and zeta together keeps the plan.
    const double lambda = rng.uniform(0.1, 10.0);
    auto scaled = d;
    for (auto& x : scaled) x *= lambda;
    CHECK(kinds(decide(normalized(scaled), lambda)) == kinds(plan));
  }
}

TEST_CASE("actuator map interpolation and clamping") {
  const std::vector<std::pair<double, double>> samples{{10, 1.0}, {20, 2.0}};
  const auto map = learn_actuator_map(samples);
  CHECK(map.gain_at(15) == doctest::Approx(1.5));
  CHECK(map.gain_at(5) == 1.0);
  CHECK(map.gain_at(25) == 2.0);
  CHECK(map.gain_at(10) == 1.0);
  CHECK(map.gain_at(20) == 2.0);

  const std::vector<std::pair<double, double>> dup{{10, 1.0}, {10, 3.0}, {0, 1.0}};
  const auto averaged = learn_actuator_map(dup);
  CHECK(averaged.knots() == std::vector<std::pair<double, double>>{{0, 1.0}, {10, 2.0}});

  const std::vector<std::pair<double, double>> single{{10, 1.0}, {10, 2.0}};
  CHECK_THROWS_AS(learn_actuator_map(single), std::invalid_argument);
  const std::vector<std::pair<double, double>> neg{{10, 1.0}, {20, -2.0}};
  CHECK_THROWS_AS(learn_actuator_map(neg), std::invalid_argument);
  CHECK_THROWS_AS(ActuatorMap({{1, 1}, {1, 2}}), std::invalid_argument);
}

TEST_CASE("monotone samples give a monotone map") {
  Rng rng(100);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::pair<double, double>> s;
    double v = 0.0, g = 0.5;
    for (int i = 0; i < 6; ++i) {
      v += rng.uniform(1, 5);
      g += rng.uniform(0, 0.5);
      s.emplace_back(v, g);
    }
    const auto map = learn_actuator_map(s);
    double last = map.gain_at(-1.0);
    for (int q = 0; q <= 100; ++q) {
      const double now = map.gain_at(v * q / 100.0 + 0.5);
      CHECK(now >= last);
      last = now;
    }
  }
}

TEST_CASE("perceive examples") {
  ObjectiveVector centers{1.0, 0.1, 2.0, 0.2, 3.0, 50.0};
  const auto kb = synthetic_kb(DrivingState::kFront, centers, 0.4);
  ScaleVector scales{};
  scales.fill(1.0);

  auto d = perceive(centers, kb, DrivingState::kFront, scales);
  for (const auto& x : d) {
    CHECK(x.raw == 0.0);
    CHECK(x.normalized == 0.0);
  }

  const double margin =
      delta_margin(kb.at(DrivingState::kFront, ObjectiveKind::kHeadway).profile.above);
  CHECK(margin == doctest::Approx(0.2));
  ObjectiveVector inside = centers;
  at(inside, ObjectiveKind::kHeadway) += 0.99 * margin;
  CHECK(perceive(inside, kb, DrivingState::kFront)[2].raw == 0.0);

  ObjectiveVector beyond = centers;
  at(beyond, ObjectiveKind::kHeadway) += margin + 1.0;
  d = perceive(beyond, kb, DrivingState::kFront, scales);
  CHECK(d[2].raw == doctest::Approx(1.0));
  CHECK(d[2].normalized == doctest::Approx(1.0 / (1.0 + kScaleEpsilon)));
  CHECK(d[2].center == 2.0);

  CHECK_THROWS_AS(perceive(centers, kb, DrivingState::kBehind), MissingKnowledge);
}

TEST_CASE("learn_online_scale") {
  std::array<std::vector<double>, kObjectiveCount> w;
  for (auto& v : w) v = {2.0, 2.0, 2.0};
  w[1] = {0, 0, 0, 0, 4};
  SOConfig cfg;
  cfg.window_halfwidth = 1.0;
  const auto s = learn_online_scale(w, cfg);
  CHECK(s[0] == 0.0);
  CHECK(s[1] == 0.0);
  CHECK(learn_online_scale(w, cfg) == s);
  w[3].clear();
  CHECK_THROWS_AS(learn_online_scale(w, cfg), std::invalid_argument);
}

TEST_CASE("adjust sign conventions") {
  const ControlLaw law;
  const auto flat = ActuatorMap::flat();
  ObjectiveVector obs{};
  at(obs, ObjectiveKind::kQuickness) = 5.0;  // 5 m/s off the desired speed
  at(obs, ObjectiveKind::kHeadway) = 1.0;
  at(obs, ObjectiveKind::kStoppingMargin) = 10.0;
  at(obs, ObjectiveKind::kSafety) = 0.5;

  CHECK(adjust({}, obs, flat, flat, 15, 20, law).accel_command == 0.0);

  AdjustmentPlan q{{{ObjectiveKind::kQuickness, 2.0, 0.5}}};
  CHECK(adjust(q, obs, flat, flat, 15, 20, law).accel_command > 0.0);
  CHECK(adjust(q, obs, flat, flat, 25, 20, law).accel_command < 0.0);

  AdjustmentPlan closer{{{ObjectiveKind::kHeadway, 2.0, 2.0}}};  // want a larger gap
  CHECK(adjust(closer, obs, flat, flat, 15, 20, law).accel_command < 0.0);
  AdjustmentPlan farther{{{ObjectiveKind::kHeadway, 2.0, 0.5}}};
  CHECK(adjust(farther, obs, flat, flat, 15, 20, law).accel_command > 0.0);

  AdjustmentPlan margin{{{ObjectiveKind::kStoppingMargin, 2.0, 30.0}}};
  CHECK(adjust(margin, obs, flat, flat, 15, 20, law).accel_command < 0.0);

  AdjustmentPlan safe{{{ObjectiveKind::kSafety, 2.0, 0.1}}};  // closing faster than learned
  CHECK(adjust(safe, obs, flat, flat, 15, 20, law).accel_command < 0.0);
}

TEST_CASE("energy and comfort damp the nudge") {
  const ControlLaw law;
  const auto flat = ActuatorMap::flat();
  ObjectiveVector obs{};
  at(obs, ObjectiveKind::kQuickness) = 3.0;
  at(obs, ObjectiveKind::kEnergy) = 10.0;
  at(obs, ObjectiveKind::kComfort) = 1.0;
  AdjustmentPlan q{{{ObjectiveKind::kQuickness, 2.0, 0.0}}};
  const double base = adjust(q, obs, flat, flat, 15, 20, law).accel_command;
  q.targets.push_back({ObjectiveKind::kEnergy, 2.0, 8.0});
  const double damped = adjust(q, obs, flat, flat, 15, 20, law).accel_command;
  CHECK(damped == doctest::Approx(base * 0.8));
  q.targets.push_back({ObjectiveKind::kComfort, 2.0, 0.1});
  CHECK(adjust(q, obs, flat, flat, 15, 20, law).accel_command ==
        doctest::Approx(base * law.min_damping));

  AdjustmentPlan only{{{ObjectiveKind::kEnergy, 2.0, 8.0}}};
  CHECK(adjust(only, obs, flat, flat, 15, 20, law, 1.0).accel_command == doctest::Approx(0.8));
  CHECK(adjust(only, obs, flat, flat, 15, 20, law).accel_command == 0.0);
}

TEST_CASE("actuator maps scale by direction and the command stays in bounds") {
  const ControlLaw law;
  const ActuatorMap brake({{0, 1.0}, {30, 3.0}});
  const ActuatorMap accel({{0, 0.5}, {30, 0.5}});
  ObjectiveVector obs{};
  at(obs, ObjectiveKind::kQuickness) = 1.0;
  AdjustmentPlan up{{{ObjectiveKind::kQuickness, 2.0, 0.0}}};
  CHECK(adjust(up, obs, brake, accel, 15, 20, law).accel_command ==
        doctest::Approx(0.5 * law.quickness_gain));
  CHECK(adjust(up, obs, brake, accel, 15, 10, law).accel_command ==
        doctest::Approx(-2.0 * law.quickness_gain));

  Rng rng(55);
  for (int t = 0; t < 2000; ++t) {
    ObjectiveVector o{};
    for (auto& x : o) x = rng.uniform(-100, 100);
    AdjustmentPlan p;
    for (auto k : kAllObjectives) {
      if (rng.uniform() < 0.5) p.targets.push_back({k, 2.0, rng.uniform(-100, 100)});
    }
    const double cmd = adjust(p, o, brake, accel, rng.uniform(0, 40), 20, law, rng.uniform(-20, 20))
                           .accel_command;
    CHECK(cmd >= -law.max_brake);
    CHECK(cmd <= law.max_accel);
  }
}

TEST_CASE("controller step") {
  ObjectiveVector centers{0.0, 0.0, 10.0, 0.0, 0.0, 200.0};
  const auto kb = synthetic_kb(DrivingState::kFreeRoad, centers, 0.0);
  ControlConfig cfg;
  cfg.command_time_constant = 0.0;
  Controller ctl(kb, cfg);
  std::vector<Snapshot> w(11);
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i].time = 0.1 * static_cast<double>(i);
    w[i].ego_speed = 10.0;
  }
  const auto step = ctl.step(w, 0.1);
  CHECK(step.state == DrivingState::kFreeRoad);
  CHECK(step.plan.contains(ObjectiveKind::kQuickness));
  CHECK(step.command.accel_command > 0.0);
  CHECK(step.command.accel_command <= cfg.law.max_accel);

  ControlConfig smooth;
  Controller lagged(kb, smooth);
  const double first = lagged.step(w, 0.1).command.accel_command;
  CHECK(first > 0.0);
  CHECK(first < step.command.accel_command);

  CHECK_THROWS_AS(ctl.step(std::span<const Snapshot>(w).first(2), 0.1), std::invalid_argument);
  ControlConfig bad;
  bad.zeta = 0.0;
  CHECK_THROWS_AS(Controller(kb, bad), std::invalid_argument);
}
