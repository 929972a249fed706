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
#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sdl/control.hpp"
#include "sdl/knowledge.hpp"

// Deterministic longitudinal simulator. The ego is integrated with forward
// Euler; neighbors follow scripted piecewise-constant speed profiles in fixed
// lanes.

namespace sdl {

struct SpeedSegment {
  double start_time = 0.0;
  double speed = 0.0;
};

struct ScriptedVehicle {
  double position = 0.0;
  int lane = 0;
  /// Sorted by start_time; the first segment should start at 0.
  std::vector<SpeedSegment> profile;

  double speed_at(double time) const;
};

struct EgoInit {
  double position = 0.0;
  double speed = 0.0;
  int lane = 0;
};

/// Intelligent-driver-model parameters for the scripted expert.
struct ExpertParams {
  double desired_speed = 25.0;
  double time_gap = 1.5;
  double max_accel = 1.5;
  double comfortable_brake = 2.0;
  double min_gap = 2.0;
  double exponent = 4.0;

  void validate() const;
};

struct Scenario {
  std::string name;
  double duration = 60.0;
  double dt = 0.1;
  EgoInit ego;
  std::vector<ScriptedVehicle> neighbors;
  std::uint64_t rng_seed = 0;
  /// Initial neighbor positions are shifted by U(-jitter, +jitter), drawn
  /// per neighbor in order from rng_seed.
  double jitter = 2.0;
  ObjectiveParams objectives;
  ExpertParams expert;
  ControlConfig control;

  void validate() const;
};

std::string scenario_to_json(const Scenario& scenario);
/// Missing blocks keep their defaults. Throws SchemaViolation.
Scenario scenario_from_json(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

/// IDM acceleration; `lead` is (gap, lead speed) or absent on a free road.
double expert_acceleration(const ExpertParams& p, double speed,
                           const std::optional<LeadInfo>& lead);

Trace run_expert(const Scenario& scenario, const ExpertParams& expert);
inline Trace run_expert(const Scenario& scenario) { return run_expert(scenario, scenario.expert); }

struct RunMetrics {
  bool collision = false;
  double min_gap = 0.0;        // m; +inf without any same-lane neighbor
  double mean_time_gap = 0.0;  // s; over ticks with a lead and v >= 0.5
  double rms_jerk = 0.0;       // m/s^3
  double mean_speed_error = 0.0;
  double energy_proxy = 0.0;   // W/kg
  std::size_t lead_ticks = 0;  // ticks contributing to mean_time_gap
};

/// Pure function of the trace. Gaps are measured toward every same-lane
/// neighbor on the side it started on; a gap <= 0 is a collision.
RunMetrics compute_metrics(const Trace& trace, const ObjectiveParams& params);

std::string metrics_csv(const RunMetrics& m);

struct ControlledRun {
  Trace trace;
  RunMetrics metrics;
  std::vector<DrivingState> states;  // one per controlled tick
};

/// Closed loop: detect state, evaluate objectives, perceive, normalize,
/// decide, adjust, integrate. Coasts until the first full objective window.
/// Throws MissingKnowledge naming the first unlearned state visited.
ControlledRun run_controlled(const Scenario& scenario, const KnowledgeBase& kb,
                             const ControlConfig& control);
inline ControlledRun run_controlled(const Scenario& scenario, const KnowledgeBase& kb) {
  return run_controlled(scenario, kb, scenario.control);
}

/// Integrates `scenario` applying `command(tick, snapshot window)` as the ego
/// acceleration. Shared by the expert and controlled runs.
Trace simulate(const Scenario& scenario,
               const std::function<double(std::span<const Snapshot>)>& command);

enum class ScenarioFamily {
  kFreeRoad,   // no traffic
  kFollow,     // lead vehicle with changing speed
  kFollower,   // vehicle closing in from behind, then falling back
  kMixed,      // one of the above, chosen by seed
};

std::string_view to_string(ScenarioFamily family);
ScenarioFamily scenario_family_from_string(std::string_view name);

/// Randomized scenario drawn from `family` with `seed`.
Scenario make_scenario(ScenarioFamily family, std::uint64_t seed);

/// Speed/gain samples from braking (or accelerating) expert ticks: the mean
/// magnitude per speed bin divided by the overall mean magnitude.
std::vector<std::pair<double, double>> actuator_samples(std::span<const Trace> traces,
                                                        bool braking, double bin_width = 5.0);

}  // namespace sdl
