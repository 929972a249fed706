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
#include "sdl/control.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace sdl {

DistanceVector perceive(const ObjectiveVector& observed, const KnowledgeBase& kb,
                        DrivingState state, const ScaleVector& scales) {
  DistanceVector out{};
  for (auto k : kAllObjectives) {
    const auto& summary = kb.at(state, k);
    const double w = sdl::at(observed, k);
    auto& d = out[static_cast<std::size_t>(k)];
    d.raw = leap_distance(std::span<const double>(&w, 1),
                          std::span<const DistributionSummary>(&summary, 1));
    d.normalized = d.raw / (scales[static_cast<std::size_t>(k)] + kScaleEpsilon);
    d.center = summary.center;
  }
  return out;
}

ScaleVector learn_online_scale(const std::array<std::vector<double>, kObjectiveCount>& recent,
                               const SOConfig& config) {
  ScaleVector out{};
  for (std::size_t k = 0; k < kObjectiveCount; ++k) {
    if (recent[k].empty()) {
      throw std::invalid_argument("learn_online_scale: empty window for objective " +
                                  std::string(to_string(kAllObjectives[k])));
    }
    out[k] = self_organize(recent[k], median(recent[k]), config).scale_value;
  }
  return out;
}

bool AdjustmentPlan::contains(ObjectiveKind kind) const {
  return std::any_of(targets.begin(), targets.end(),
                     [&](const AdjustmentTarget& t) { return t.objective == kind; });
}

AdjustmentPlan decide(const DistanceVector& distances, double zeta) {
  if (!(zeta > 0.0)) throw std::invalid_argument("zeta must be > 0");
  AdjustmentPlan plan;
  for (auto k : kAllObjectives) {
    const auto& d = distances[static_cast<std::size_t>(k)];
    if (d.normalized > zeta) plan.targets.push_back({k, d.normalized, d.center});
  }
  if (plan.targets.size() % 2 == 0 && !plan.targets.empty()) {
    // Strict '>' keeps the earliest kind on ties.
    auto best = plan.targets.front();
    for (const auto& t : plan.targets) {
      if (t.distance > best.distance) best = t;
    }
    plan.targets = {best};
  }
  return plan;
}

ActuatorMap::ActuatorMap(std::vector<std::pair<double, double>> knots)
    : knots_(std::move(knots)) {
  if (knots_.empty()) throw std::invalid_argument("actuator map needs knots");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!(knots_[i].second > 0.0) || !std::isfinite(knots_[i].second)) {
      throw std::invalid_argument("actuator gains must be positive");
    }
    if (i > 0 && !(knots_[i].first > knots_[i - 1].first)) {
      throw std::invalid_argument("actuator map speeds must be strictly ascending");
    }
  }
}

double ActuatorMap::gain_at(double speed) const {
  if (speed <= knots_.front().first) return knots_.front().second;
  if (speed >= knots_.back().first) return knots_.back().second;
  const auto hi = std::upper_bound(knots_.begin(), knots_.end(), speed,
                                   [](double s, const auto& k) { return s < k.first; });
  const auto lo = hi - 1;
  if (speed == lo->first) return lo->second;
  const double t = (speed - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

ActuatorMap learn_actuator_map(std::span<const std::pair<double, double>> samples) {
  std::map<double, std::pair<double, int>> by_speed;
  for (const auto& [speed, gain] : samples) {
    if (!(gain > 0.0)) throw std::invalid_argument("achieved gains must be positive");
    auto& acc = by_speed[speed];
    acc.first += gain;
    acc.second += 1;
  }
  if (by_speed.size() < 2) {
    throw std::invalid_argument("actuator map needs at least two distinct speeds");
  }
  std::vector<std::pair<double, double>> knots;
  for (const auto& [speed, acc] : by_speed) {
    knots.emplace_back(speed, acc.first / acc.second);
  }
  return ActuatorMap(std::move(knots));
}

void ControlLaw::validate() const {
  if (headway_gain < 0.0 || margin_gain < 0.0 || safety_gain < 0.0 || quickness_gain < 0.0) {
    throw std::invalid_argument("control gains must be >= 0");
  }
  if (!(min_damping > 0.0 && min_damping <= 1.0)) {
    throw std::invalid_argument("min_damping must lie in (0, 1]");
  }
  if (!(max_accel > 0.0) || !(max_brake > 0.0)) {
    throw std::invalid_argument("actuator bounds must be positive");
  }
}

ActuatorCommand adjust(const AdjustmentPlan& plan, const ObjectiveVector& observed,
                       const ActuatorMap& brake, const ActuatorMap& accel, double ego_speed,
                       double desired_speed, const ControlLaw& law, double held_command) {
  if (plan.empty()) return {};

  double nudge = 0.0;
  double damping = 1.0;
  bool actuating = false;
  for (const auto& t : plan.targets) {
    const double value = sdl::at(observed, t.objective);
    const double error = t.target_value - value;
    if (t.objective != ObjectiveKind::kEnergy && t.objective != ObjectiveKind::kComfort) {
      actuating = true;
    }
    switch (t.objective) {
      case ObjectiveKind::kHeadway:
        // Time gap below target: brake. Above: close in.
        nudge -= law.headway_gain * error;
        break;
      case ObjectiveKind::kStoppingMargin:
        nudge -= law.margin_gain * error;
        break;
      case ObjectiveKind::kSafety:
        // Higher inverse TTC than learned means closing too fast.
        nudge += law.safety_gain * error;
        break;
      case ObjectiveKind::kQuickness:
        if (value > t.target_value) {
          const double toward = desired_speed > ego_speed ? 1.0 : (desired_speed < ego_speed ? -1.0 : 0.0);
          nudge += law.quickness_gain * (value - t.target_value) * toward;
        }
        break;
      case ObjectiveKind::kEnergy:
      case ObjectiveKind::kComfort:
        if (value > t.target_value) {
          const double ratio = t.target_value > 0.0 ? t.target_value / value : 0.0;
          damping *= std::max(law.min_damping, ratio);
        }
        break;
    }
  }
  damping = std::max(law.min_damping, damping);
  if (!actuating) {
    return {std::clamp(held_command * damping, -law.max_brake, law.max_accel)};
  }
  const double total = nudge * damping;
  const double gain = total < 0.0 ? brake.gain_at(ego_speed) : accel.gain_at(ego_speed);
  return {std::clamp(gain * total, -law.max_brake, law.max_accel)};
}

void ControlConfig::validate() const {
  if (!(zeta > 0.0)) throw std::invalid_argument("zeta must be > 0");
  if (scale_window == 0) throw std::invalid_argument("scale_window must be >= 1");
  if (!(command_time_constant >= 0.0)) {
    throw std::invalid_argument("command_time_constant must be >= 0");
  }
  scale_so.validate();
  law.validate();
  objectives.validate();
}

Controller::Controller(const KnowledgeBase& kb, ControlConfig config)
    : kb_(kb), config_(std::move(config)) {
  config_.validate();
}

ControlStep Controller::step(std::span<const Snapshot> window, double dt) {
  if (window.size() < 3) throw std::invalid_argument("controller window needs >= 3 snapshots");
  ControlStep out;
  out.state = detect_state(window.back(), config_.zones);
  out.observed = evaluate_objectives(window, config_.objectives);
  out.distances = perceive(out.observed, kb_, out.state);

  std::array<std::vector<double>, kObjectiveCount> recent;
  for (std::size_t k = 0; k < kObjectiveCount; ++k) {
    auto& q = recent_[k];
    q.push_back(out.distances[k].raw);
    while (q.size() > config_.scale_window) q.pop_front();
    recent[k].assign(q.begin(), q.end());
  }
  out.scales = learn_online_scale(recent, config_.scale_so);
  for (std::size_t k = 0; k < kObjectiveCount; ++k) {
    out.distances[k].normalized = out.distances[k].raw / (out.scales[k] + kScaleEpsilon);
  }

  out.plan = decide(out.distances, config_.zeta);
  double cmd = adjust(out.plan, out.observed, config_.brake_map, config_.accel_map,
                      window.back().ego_speed, config_.objectives.desired_speed, config_.law,
                      last_command_)
                   .accel_command;
  if (config_.command_time_constant > 0.0) {
    const double alpha = dt / (config_.command_time_constant + dt);
    cmd = last_command_ + alpha * (cmd - last_command_);
  }
  cmd = std::clamp(cmd, -config_.law.max_brake, config_.law.max_accel);
  last_command_ = cmd;
  out.command.accel_command = cmd;
  return out;
}

}  // namespace sdl
