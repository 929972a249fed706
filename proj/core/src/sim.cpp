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
#include "sdl/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sdl/error.hpp"
#include "sdl/io.hpp"
#include "sdl/random.hpp"

namespace sdl {

namespace {

using nlohmann::json;

constexpr double kTimeSlack = 1e-9;
// Hard floor on the expert's deceleration, roughly one g.
constexpr double kExpertBrakeLimit = 9.0;
constexpr double kMinExpertGap = 0.01;

// Reads `name` from `obj` into `out` when present.
void read_real(const json& obj, const char* name, double& out) {
  if (!obj.contains(name)) return;
  const auto& v = obj.at(name);
  if (!v.is_number()) throw SchemaViolation(std::string("field '") + name + "' is not a number");
  out = v.get<double>();
}

void read_int(const json& obj, const char* name, int& out) {
  if (!obj.contains(name)) return;
  const auto& v = obj.at(name);
  if (!v.is_number_integer()) {
    throw SchemaViolation(std::string("field '") + name + "' is not an integer");
  }
  out = v.get<int>();
}

const json& object_field(const json& obj, const char* name) {
  const auto& v = obj.at(name);
  if (!v.is_object()) throw SchemaViolation(std::string("field '") + name + "' is not an object");
  return v;
}

json knots_to_json(const ActuatorMap& map) {
  json out = json::array();
  for (const auto& [speed, gain] : map.knots()) out.push_back(json::array({speed, gain}));
  return out;
}

ActuatorMap knots_from_json(const json& j, const char* name) {
  if (!j.is_array()) throw SchemaViolation(std::string("field '") + name + "' is not an array");
  std::vector<std::pair<double, double>> knots;
  for (const auto& k : j) {
    if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number()) {
      throw SchemaViolation(std::string("'") + name + "' knots must be [speed, gain] pairs");
    }
    knots.emplace_back(k[0].get<double>(), k[1].get<double>());
  }
  try {
    return ActuatorMap(std::move(knots));
  } catch (const std::invalid_argument& e) {
    throw SchemaViolation(std::string(name) + ": " + e.what());
  }
}

std::vector<Neighbor> neighbors_at(const std::vector<ScriptedVehicle>& vehicles,
                                   const std::vector<double>& positions, double time) {
  std::vector<Neighbor> out;
  out.reserve(vehicles.size());
  for (std::size_t i = 0; i < vehicles.size(); ++i) {
    out.push_back({positions[i], vehicles[i].speed_at(time), vehicles[i].lane});
  }
  return out;
}

}  // namespace

double ScriptedVehicle::speed_at(double time) const {
  if (profile.empty()) return 0.0;
  double speed = profile.front().speed;
  for (const auto& seg : profile) {
    if (seg.start_time <= time + kTimeSlack) speed = seg.speed;
    else break;
  }
  return speed;
}

void ExpertParams::validate() const {
  if (!(desired_speed > 0.0) || !(time_gap > 0.0) || !(max_accel > 0.0) ||
      !(comfortable_brake > 0.0) || !(min_gap > 0.0) || !(exponent > 0.0)) {
    throw std::invalid_argument("expert parameters must be positive");
  }
}

void Scenario::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("scenario dt must be > 0");
  if (!(duration >= dt)) throw std::invalid_argument("scenario duration must be >= dt");
  if (!(ego.speed >= 0.0)) throw std::invalid_argument("ego initial speed must be >= 0");
  if (!(jitter >= 0.0)) throw std::invalid_argument("jitter must be >= 0");
  for (const auto& n : neighbors) {
    if (n.profile.empty()) throw std::invalid_argument("neighbor needs a speed profile");
    for (std::size_t i = 0; i < n.profile.size(); ++i) {
      if (!(n.profile[i].speed >= 0.0)) throw std::invalid_argument("neighbor speeds must be >= 0");
      if (i > 0 && !(n.profile[i].start_time > n.profile[i - 1].start_time)) {
        throw std::invalid_argument("speed segments must have ascending start times");
      }
    }
  }
  objectives.validate();
  expert.validate();
  control.validate();
}

std::string scenario_to_json(const Scenario& s) {
  json neighbors = json::array();
  for (const auto& n : s.neighbors) {
    json profile = json::array();
    for (const auto& seg : n.profile) {
      profile.push_back(json{{"start_time", seg.start_time}, {"speed", seg.speed}});
    }
    neighbors.push_back(json{{"position", n.position}, {"lane", n.lane}, {"profile", profile}});
  }
  const auto& c = s.control;
  json doc{
      {"name", s.name},
      {"duration", s.duration},
      {"dt", s.dt},
      {"seed", s.rng_seed},
      {"jitter", s.jitter},
      {"ego", json{{"position", s.ego.position}, {"speed", s.ego.speed}, {"lane", s.ego.lane}}},
      {"neighbors", neighbors},
      {"objectives", json{{"desired_speed", s.objectives.desired_speed},
                          {"max_brake", s.objectives.max_brake},
                          {"headway_cap", s.objectives.headway_cap},
                          {"margin_cap", s.objectives.margin_cap},
                          {"safety_cap", s.objectives.safety_cap},
                          {"lead_range", s.objectives.lead_range}}},
      {"zones", json{{"front_range", c.zones.front_range},
                     {"behind_range", c.zones.behind_range},
                     {"side_range", c.zones.side_range}}},
      {"expert", json{{"desired_speed", s.expert.desired_speed},
                      {"time_gap", s.expert.time_gap},
                      {"max_accel", s.expert.max_accel},
                      {"comfortable_brake", s.expert.comfortable_brake},
                      {"min_gap", s.expert.min_gap},
                      {"exponent", s.expert.exponent}}},
      {"control", json{{"zeta", c.zeta},
                       {"scale_window", c.scale_window},
                       {"scale_halfwidth", c.scale_so.window_halfwidth},
                       {"headway_gain", c.law.headway_gain},
                       {"margin_gain", c.law.margin_gain},
                       {"safety_gain", c.law.safety_gain},
                       {"quickness_gain", c.law.quickness_gain},
                       {"min_damping", c.law.min_damping},
                       {"max_accel", c.law.max_accel},
                       {"max_brake", c.law.max_brake},
                       {"command_time_constant", c.command_time_constant},
                       {"brake_map", knots_to_json(c.brake_map)},
                       {"accel_map", knots_to_json(c.accel_map)}}},
  };
  return doc.dump(2) + "\n";
}

Scenario scenario_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaViolation(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaViolation("scenario must be a JSON object");

  Scenario s;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw SchemaViolation("field 'name' is not a string");
    s.name = doc["name"].get<std::string>();
  }
  read_real(doc, "duration", s.duration);
  read_real(doc, "dt", s.dt);
  read_real(doc, "jitter", s.jitter);
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) throw SchemaViolation("field 'seed' must be a nonnegative integer");
    s.rng_seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("ego")) {
    const auto& e = object_field(doc, "ego");
    read_real(e, "position", s.ego.position);
    read_real(e, "speed", s.ego.speed);
    read_int(e, "lane", s.ego.lane);
  }
  if (doc.contains("neighbors")) {
    const auto& arr = doc["neighbors"];
    if (!arr.is_array()) throw SchemaViolation("field 'neighbors' is not an array");
    for (const auto& n : arr) {
      if (!n.is_object()) throw SchemaViolation("neighbor entries must be objects");
      ScriptedVehicle v;
      read_real(n, "position", v.position);
      read_int(n, "lane", v.lane);
      if (!n.contains("profile") || !n["profile"].is_array()) {
        throw SchemaViolation("neighbor needs a 'profile' array");
      }
      for (const auto& seg : n["profile"]) {
        if (!seg.is_object()) throw SchemaViolation("profile segments must be objects");
        SpeedSegment sg;
        read_real(seg, "start_time", sg.start_time);
        if (!seg.contains("speed")) throw SchemaViolation("profile segment needs 'speed'");
        read_real(seg, "speed", sg.speed);
        v.profile.push_back(sg);
      }
      s.neighbors.push_back(std::move(v));
    }
  }
  if (doc.contains("objectives")) {
    const auto& o = object_field(doc, "objectives");
    read_real(o, "desired_speed", s.objectives.desired_speed);
    read_real(o, "max_brake", s.objectives.max_brake);
    read_real(o, "headway_cap", s.objectives.headway_cap);
    read_real(o, "margin_cap", s.objectives.margin_cap);
    read_real(o, "safety_cap", s.objectives.safety_cap);
    read_real(o, "lead_range", s.objectives.lead_range);
  }
  if (doc.contains("zones")) {
    const auto& z = object_field(doc, "zones");
    read_real(z, "front_range", s.control.zones.front_range);
    read_real(z, "behind_range", s.control.zones.behind_range);
    read_real(z, "side_range", s.control.zones.side_range);
  }
  if (doc.contains("expert")) {
    const auto& e = object_field(doc, "expert");
    read_real(e, "desired_speed", s.expert.desired_speed);
    read_real(e, "time_gap", s.expert.time_gap);
    read_real(e, "max_accel", s.expert.max_accel);
    read_real(e, "comfortable_brake", s.expert.comfortable_brake);
    read_real(e, "min_gap", s.expert.min_gap);
    read_real(e, "exponent", s.expert.exponent);
  }
  if (doc.contains("control")) {
    const auto& c = object_field(doc, "control");
    auto& cc = s.control;
    read_real(c, "zeta", cc.zeta);
    if (c.contains("scale_window")) {
      if (!c["scale_window"].is_number_unsigned()) {
        throw SchemaViolation("field 'scale_window' must be a positive integer");
      }
      cc.scale_window = c["scale_window"].get<std::size_t>();
    }
    read_real(c, "scale_halfwidth", cc.scale_so.window_halfwidth);
    read_real(c, "headway_gain", cc.law.headway_gain);
    read_real(c, "margin_gain", cc.law.margin_gain);
    read_real(c, "safety_gain", cc.law.safety_gain);
    read_real(c, "quickness_gain", cc.law.quickness_gain);
    read_real(c, "min_damping", cc.law.min_damping);
    read_real(c, "max_accel", cc.law.max_accel);
    read_real(c, "max_brake", cc.law.max_brake);
    read_real(c, "command_time_constant", cc.command_time_constant);
    if (c.contains("brake_map")) cc.brake_map = knots_from_json(c["brake_map"], "brake_map");
    if (c.contains("accel_map")) cc.accel_map = knots_from_json(c["accel_map"], "accel_map");
  }
  s.control.objectives = s.objectives;
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaViolation(std::string("invalid scenario: ") + e.what());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_json(io::read_file(path));
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  io::write_file_atomic(path, scenario_to_json(scenario));
}

double expert_acceleration(const ExpertParams& p, double speed,
                           const std::optional<LeadInfo>& lead) {
  double a = p.max_accel * (1.0 - std::pow(std::max(0.0, speed) / p.desired_speed, p.exponent));
  if (lead) {
    const double dv = speed - lead->speed;
    const double dynamic =
        speed * p.time_gap + speed * dv / (2.0 * std::sqrt(p.max_accel * p.comfortable_brake));
    const double desired = p.min_gap + std::max(0.0, dynamic);
    const double ratio = desired / std::max(kMinExpertGap, lead->gap);
    a -= p.max_accel * ratio * ratio;
  }
  return std::max(a, -kExpertBrakeLimit);
}

Trace simulate(const Scenario& scenario,
               const std::function<double(std::span<const Snapshot>)>& command) {
  scenario.validate();
  Rng rng(scenario.rng_seed);
  std::vector<double> positions;
  positions.reserve(scenario.neighbors.size());
  for (const auto& n : scenario.neighbors) {
    positions.push_back(n.position + rng.uniform(-scenario.jitter, scenario.jitter));
  }

  const auto steps = static_cast<std::size_t>(std::llround(scenario.duration / scenario.dt));
  Trace trace;
  trace.dt = scenario.dt;
  trace.samples.reserve(steps + 1);

  double x = scenario.ego.position;
  double v = scenario.ego.speed;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * scenario.dt;
    trace.samples.push_back(
        Snapshot{t, x, v, 0.0, scenario.ego.lane, neighbors_at(scenario.neighbors, positions, t)});
    const double a = command(std::span<const Snapshot>(trace.samples));
    if (!std::isfinite(a)) throw std::runtime_error("non-finite acceleration command");
    const double v_next = std::max(0.0, v + a * scenario.dt);
    trace.samples.back().ego_accel = (v_next - v) / scenario.dt;
    if (k == steps) break;
    x += v * scenario.dt;
    v = v_next;
    for (std::size_t i = 0; i < positions.size(); ++i) {
      positions[i] += scenario.neighbors[i].speed_at(t) * scenario.dt;
    }
  }
  return trace;
}

Trace run_expert(const Scenario& scenario, const ExpertParams& expert) {
  expert.validate();
  return simulate(scenario, [&](std::span<const Snapshot> history) {
    const auto& s = history.back();
    return expert_acceleration(expert, s.ego_speed, same_lane_lead(s));
  });
}

RunMetrics compute_metrics(const Trace& trace, const ObjectiveParams& params) {
  if (trace.samples.size() < 3) throw std::invalid_argument("metrics need >= 3 samples");
  trace.validate();
  params.validate();

  RunMetrics m;
  m.min_gap = std::numeric_limits<double>::infinity();
  const auto& first = trace.samples.front();
  // Side (+1 ahead, -1 behind) of every neighbor that starts in the ego lane.
  std::vector<double> side(first.neighbors.size(), 0.0);
  for (std::size_t j = 0; j < first.neighbors.size(); ++j) {
    if (first.neighbors[j].lane == first.ego_lane) {
      side[j] = first.neighbors[j].position >= first.ego_position ? 1.0 : -1.0;
    }
  }

  double time_gap_sum = 0.0, speed_err = 0.0, energy = 0.0;
  for (const auto& s : trace.samples) {
    for (std::size_t j = 0; j < side.size() && j < s.neighbors.size(); ++j) {
      if (side[j] == 0.0 || s.neighbors[j].lane != s.ego_lane) continue;
      const double gap = side[j] * (s.neighbors[j].position - s.ego_position);
      m.min_gap = std::min(m.min_gap, gap);
      if (gap <= 0.0) m.collision = true;
    }
    const auto lead = same_lane_lead(s);
    if (lead && s.ego_speed >= 0.5) {
      time_gap_sum += std::min(params.headway_cap, lead->gap / s.ego_speed);
      ++m.lead_ticks;
    }
    speed_err += std::abs(s.ego_speed - params.desired_speed);
    energy += std::max(0.0, s.ego_accel) * s.ego_speed;
  }
  const auto n = static_cast<double>(trace.samples.size());
  m.mean_time_gap = m.lead_ticks > 0 ? time_gap_sum / static_cast<double>(m.lead_ticks)
                                     : std::numeric_limits<double>::quiet_NaN();
  m.mean_speed_error = speed_err / n;
  m.energy_proxy = energy / n;

  double jerk_sq = 0.0;
  for (std::size_t i = 1; i < trace.samples.size(); ++i) {
    const double j = (trace.samples[i].ego_accel - trace.samples[i - 1].ego_accel) / trace.dt;
    jerk_sq += j * j;
  }
  m.rms_jerk = std::sqrt(jerk_sq / (n - 1.0));
  return m;
}

std::string metrics_csv(const RunMetrics& m) {
  std::string out =
      "collision,min_gap,mean_time_gap,rms_jerk,mean_speed_error,energy_proxy,lead_ticks\n";
  out += m.collision ? "1" : "0";
  for (double v : {m.min_gap, m.mean_time_gap, m.rms_jerk, m.mean_speed_error, m.energy_proxy}) {
    out += ',';
    out += io::format_real(v);
  }
  out += ',' + std::to_string(m.lead_ticks) + '\n';
  return out;
}

ControlledRun run_controlled(const Scenario& scenario, const KnowledgeBase& kb,
                             const ControlConfig& control) {
  ControlConfig config = control;
  config.objectives = scenario.objectives;
  Controller controller(kb, config);
  const std::size_t len = window_length(kb.window_seconds(), scenario.dt);

  ControlledRun run;
  run.trace = simulate(scenario, [&](std::span<const Snapshot> history) {
    const auto state = detect_state(history.back(), config.zones);
    if (!kb.covers(state)) {
      for (auto k : kAllObjectives) kb.at(state, k);
    }
    if (history.size() < len) return 0.0;
    const auto step = controller.step(history.last(len), scenario.dt);
    run.states.push_back(step.state);
    return step.command.accel_command;
  });
  run.metrics = compute_metrics(run.trace, scenario.objectives);
  return run;
}

std::string_view to_string(ScenarioFamily family) {
  switch (family) {
    case ScenarioFamily::kFreeRoad: return "free_road";
    case ScenarioFamily::kFollow: return "follow";
    case ScenarioFamily::kFollower: return "follower";
    case ScenarioFamily::kMixed: return "mixed";
  }
  throw std::invalid_argument("unknown scenario family");
}

ScenarioFamily scenario_family_from_string(std::string_view name) {
  for (auto f : {ScenarioFamily::kFreeRoad, ScenarioFamily::kFollow, ScenarioFamily::kFollower,
                 ScenarioFamily::kMixed}) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown scenario family '" + std::string(name) + "'");
}

Scenario make_scenario(ScenarioFamily family, std::uint64_t seed) {
  Rng rng(seed ^ 0x5DEECE66DULL);
  if (family == ScenarioFamily::kMixed) {
    family = static_cast<ScenarioFamily>(rng.uniform_int(0, 2));
  }
  Scenario s;
  s.name = std::string(to_string(family)) + "-" + std::to_string(seed);
  s.rng_seed = seed;
  s.duration = 60.0;
  s.dt = 0.1;

  switch (family) {
    case ScenarioFamily::kFreeRoad:
      s.ego.speed = rng.uniform(0.0, 25.0);
      break;
    case ScenarioFamily::kFollow: {
      ScriptedVehicle lead;
      lead.position = rng.uniform(40.0, 80.0);
      double speed = rng.uniform(12.0, 22.0);
      s.ego.speed = std::max(0.0, speed + rng.uniform(-3.0, 3.0));
      double t = 0.0;
      while (t < s.duration) {
        lead.profile.push_back({t, speed});
        t += rng.uniform(10.0, 20.0);
        speed = std::clamp(speed + rng.uniform(-4.0, 4.0), 8.0, 25.0);
      }
      s.neighbors.push_back(std::move(lead));
      break;
    }
    case ScenarioFamily::kFollower: {
      s.ego.speed = rng.uniform(15.0, 22.0);
      ScriptedVehicle follower;
      follower.position = -rng.uniform(20.0, 28.0);
      const double closing = rng.uniform(0.5, 1.5);
      const double close_for = rng.uniform(2.0, 4.0);
      follower.profile.push_back({0.0, s.ego.speed + closing});
      follower.profile.push_back({close_for, std::max(0.0, s.ego.speed - rng.uniform(2.0, 4.0))});
      s.neighbors.push_back(std::move(follower));
      break;
    }
    case ScenarioFamily::kMixed:
      break;
  }
  s.control.objectives = s.objectives;
  return s;
}

std::vector<std::pair<double, double>> actuator_samples(std::span<const Trace> traces,
                                                        bool braking, double bin_width) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("bin_width must be > 0");
  constexpr double kActive = 0.05;
  std::map<long long, std::pair<double, std::size_t>> bins;
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& trace : traces) {
    for (const auto& s : trace.samples) {
      const double a = braking ? -s.ego_accel : s.ego_accel;
      if (a <= kActive) continue;
      auto& b = bins[static_cast<long long>(std::floor(s.ego_speed / bin_width))];
      b.first += a;
      b.second += 1;
      total += a;
      ++count;
    }
  }
  std::vector<std::pair<double, double>> out;
  if (count == 0) return out;
  const double overall = total / static_cast<double>(count);
  for (const auto& [bin, acc] : bins) {
    const double center = (static_cast<double>(bin) + 0.5) * bin_width;
    out.emplace_back(center, acc.first / static_cast<double>(acc.second) / overall);
  }
  return out;
}

}  // namespace sdl
