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

#include <array>
#include <cstddef>
#include <deque>
#include <span>
#include <utility>
#include <vector>

#include "sdl/knowledge.hpp"
#include "sdl/self_organizing.hpp"

// Online multi-objective controller. Each tick the observed objective values
// are measured against the learned per-state distributions, the distances are
// normalized by a rolling self-organized scale, a threshold rule picks which
// objectives to correct, and the corrections become one acceleration command.

namespace sdl {

inline constexpr double kScaleEpsilon = 1e-6;

struct ObjectiveDistance {
  double raw = 0.0;         // leap distance to the learned center
  double normalized = 0.0;  // raw / (rolling scale + kScaleEpsilon)
  double center = 0.0;      // learned center, the correction target
};

/// Indexed by ObjectiveKind.
using DistanceVector = std::array<ObjectiveDistance, kObjectiveCount>;
using ScaleVector = std::array<double, kObjectiveCount>;

/// Raw leap distance of each observed value from its learned distribution
/// for `state`, normalized by `scales`. Throws MissingKnowledge.
DistanceVector perceive(const ObjectiveVector& observed, const KnowledgeBase& kb,
                        DrivingState state, const ScaleVector& scales = {});

/// Per-objective scale value of self_organize over recent raw distances,
/// started from their median. Throws std::invalid_argument on an empty window.
ScaleVector learn_online_scale(const std::array<std::vector<double>, kObjectiveCount>& recent,
                               const SOConfig& config);

struct AdjustmentTarget {
  ObjectiveKind objective;
  double distance = 0.0;
  double target_value = 0.0;

  bool operator==(const AdjustmentTarget&) const = default;
};

struct AdjustmentPlan {
  std::vector<AdjustmentTarget> targets;

  bool empty() const { return targets.empty(); }
  bool contains(ObjectiveKind kind) const;
};

/// Objectives whose normalized distance exceeds `zeta`: all of them when
/// their number is odd, otherwise only the largest (ObjectiveKind order
/// breaks ties). Nothing exceeding gives an empty plan.
AdjustmentPlan decide(const DistanceVector& distances, double zeta);

/// Piecewise-linear gain over speed, clamped to the end knots.
class ActuatorMap {
 public:
  /// Knots must have strictly ascending speeds and positive gains.
  explicit ActuatorMap(std::vector<std::pair<double, double>> knots);

  static ActuatorMap flat(double gain = 1.0) { return ActuatorMap({{0.0, gain}, {1.0, gain}}); }

  double gain_at(double speed) const;
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

  bool operator==(const ActuatorMap&) const = default;

 private:
  std::vector<std::pair<double, double>> knots_;
};

/// Sorts samples by speed, averages duplicate speeds and interpolates.
/// Needs at least two distinct speeds.
ActuatorMap learn_actuator_map(std::span<const std::pair<double, double>> samples);

struct ActuatorCommand {
  double accel_command = 0.0;
};

/// Proportional correction law. Gains convert each objective's error into
/// an acceleration nudge in m/s^2.
struct ControlLaw {
  double headway_gain = 1.0;    // per s of time-gap error
  double margin_gain = 0.2;     // per m of stopping-margin error
  double safety_gain = 20.0;    // per 1/s of inverse-TTC error
  double quickness_gain = 0.3;  // per m/s of speed-error excess
  double min_damping = 0.5;     // floor on the energy/comfort damping factor
  double max_accel = 2.0;
  double max_brake = 6.0;

  void validate() const;
};

/// Turns a plan into one acceleration command.
///
/// Headway, stopping margin and safety errors push through the gap
/// dynamics (too close or closing too fast brakes, too far accelerates).
/// Quickness pushes toward `desired_speed`. Energy and comfort excesses
/// scale the summed nudge down. The sum is multiplied by the brake-map gain
/// (negative sum) or accel-map gain (positive sum) at `ego_speed` and
/// clamped to [-max_brake, max_accel]. A plan holding only energy and
/// comfort targets scales `held_command` (the command in force) instead.
/// An empty plan gives 0.
ActuatorCommand adjust(const AdjustmentPlan& plan, const ObjectiveVector& observed,
                       const ActuatorMap& brake, const ActuatorMap& accel, double ego_speed,
                       double desired_speed, const ControlLaw& law,
                       double held_command = 0.0);

struct ControlConfig {
  double zeta = 1.0;
  std::size_t scale_window = 50;  // ticks of raw distances kept per objective
  SOConfig scale_so;              // for the rolling scale
  ControlLaw law;
  ActuatorMap brake_map = ActuatorMap::flat();
  ActuatorMap accel_map = ActuatorMap::flat();
  /// First-order smoothing time constant on the issued command, s; 0 = off.
  double command_time_constant = 1.0;
  ObjectiveParams objectives;
  ZoneParams zones;

  void validate() const;
};

/// Everything one controller tick produced.
struct ControlStep {
  DrivingState state = DrivingState::kFreeRoad;
  ObjectiveVector observed{};
  DistanceVector distances{};
  ScaleVector scales{};
  AdjustmentPlan plan;
  ActuatorCommand command;
};

/// One vehicle's controller. The rolling distance windows and the previous
/// command are its only mutable state.
class Controller {
 public:
  Controller(const KnowledgeBase& kb, ControlConfig config);

  /// Runs one tick on the trailing window (oldest first, at least 3
  /// snapshots). The state comes from the window's last snapshot.
  ControlStep step(std::span<const Snapshot> window, double dt);

  const ControlConfig& config() const { return config_; }

 private:
  const KnowledgeBase& kb_;
  ControlConfig config_;
  std::array<std::deque<double>, kObjectiveCount> recent_;
  double last_command_ = 0.0;
};

}  // namespace sdl
