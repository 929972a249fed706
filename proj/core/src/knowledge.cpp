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
#include "sdl/knowledge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sdl/io.hpp"

namespace sdl {
namespace {

using nlohmann::json;

constexpr double kMinHeadwaySpeed = 0.5;

// Lower rank wins among equidistant neighbors.
int priority(DrivingState s) {
  switch (s) {
    case DrivingState::kFront: return 0;
    case DrivingState::kBehind: return 1;
    case DrivingState::kLeftSide: return 2;
    case DrivingState::kRightSide: return 3;
    case DrivingState::kLeftFront: return 4;
    case DrivingState::kRightFront: return 5;
    case DrivingState::kLeftBehind: return 6;
    case DrivingState::kRightBehind: return 7;
    case DrivingState::kFreeRoad: return 8;
  }
  return 9;
}

std::optional<DrivingState> classify(const Snapshot& s, const Neighbor& n,
                                     const ZoneParams& z) {
  const int dl = n.lane - s.ego_lane;
  const double dx = n.position - s.ego_position;
  if (dl == 0) {
    if (dx >= 0.0 && dx < z.front_range) return DrivingState::kFront;
    if (dx < 0.0 && -dx < z.behind_range) return DrivingState::kBehind;
    return std::nullopt;
  }
  if (dl != 1 && dl != -1) return std::nullopt;
  const bool left = dl < 0;
  if (std::abs(dx) < z.side_range) {
    return left ? DrivingState::kLeftSide : DrivingState::kRightSide;
  }
  if (dx > 0.0 && dx < z.front_range) {
    return left ? DrivingState::kLeftFront : DrivingState::kRightFront;
  }
  if (dx < 0.0 && -dx < z.behind_range) {
    return left ? DrivingState::kLeftBehind : DrivingState::kRightBehind;
  }
  return std::nullopt;
}

// --- JSON helpers -----------------------------------------------------------

const json& field(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) {
    throw SchemaViolation(std::string("missing field '") + name + "'");
  }
  return obj.at(name);
}

double real_field(const json& obj, const char* name) {
  const auto& v = field(obj, name);
  if (!v.is_number()) throw SchemaViolation(std::string("field '") + name + "' is not a number");
  return v.get<double>();
}

std::vector<double> real_array(const json& obj, const char* name) {
  const auto& v = field(obj, name);
  if (!v.is_array()) throw SchemaViolation(std::string("field '") + name + "' is not an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) throw SchemaViolation(std::string("non-numeric entry in '") + name + "'");
    out.push_back(e.get<double>());
  }
  return out;
}

json profile_to_json(const DeviationProfile& p) {
  return json{{"boundaries", p.boundaries}, {"masses", p.masses}};
}

DeviationProfile profile_from_json(const json& j) {
  DeviationProfile p{real_array(j, "boundaries"), real_array(j, "masses")};
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaViolation(e.what());
  }
  return p;
}

}  // namespace

// --- enums ------------------------------------------------------------------

std::string_view to_string(DrivingState state) {
  switch (state) {
    case DrivingState::kFreeRoad: return "free_road";
    case DrivingState::kLeftBehind: return "left_behind";
    case DrivingState::kLeftFront: return "left_front";
    case DrivingState::kLeftSide: return "left_side";
    case DrivingState::kRightBehind: return "right_behind";
    case DrivingState::kRightFront: return "right_front";
    case DrivingState::kRightSide: return "right_side";
    case DrivingState::kFront: return "front";
    case DrivingState::kBehind: return "behind";
  }
  return "unknown";
}

DrivingState driving_state_from_string(std::string_view name) {
  for (auto s : kAllStates) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown driving state: " + std::string(name));
}

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kEnergy: return "energy";
    case ObjectiveKind::kSafety: return "safety";
    case ObjectiveKind::kHeadway: return "headway";
    case ObjectiveKind::kComfort: return "comfort";
    case ObjectiveKind::kQuickness: return "quickness";
    case ObjectiveKind::kStoppingMargin: return "stopping_margin";
  }
  return "unknown";
}

ObjectiveKind objective_kind_from_string(std::string_view name) {
  for (auto k : kAllObjectives) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown objective: " + std::string(name));
}

// --- snapshots and traces ---------------------------------------------------

void Trace::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("trace dt must be > 0");
  if (samples.size() < 2) throw std::invalid_argument("trace needs at least 2 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].ego_speed >= 0.0)) {
      throw std::invalid_argument("negative ego speed at sample " + std::to_string(i));
    }
    if (i > 0 && std::abs(samples[i].time - samples[i - 1].time - dt) > 1e-9) {
      throw std::invalid_argument("non-uniform time step at sample " + std::to_string(i));
    }
  }
}

std::optional<LeadInfo> same_lane_lead(const Snapshot& s) {
  std::optional<LeadInfo> lead;
  for (const auto& n : s.neighbors) {
    if (n.lane != s.ego_lane) continue;
    const double gap = n.position - s.ego_position;
    if (gap > 0.0 && (!lead || gap < lead->gap)) lead = LeadInfo{gap, n.speed};
  }
  return lead;
}

DrivingState detect_state(const Snapshot& snapshot, const ZoneParams& zones) {
  DrivingState best = DrivingState::kFreeRoad;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const auto& n : snapshot.neighbors) {
    const auto state = classify(snapshot, n, zones);
    if (!state) continue;
    const double dist = std::abs(n.position - snapshot.ego_position);
    if (dist < best_dist || (dist == best_dist && priority(*state) < priority(best))) {
      best = *state;
      best_dist = dist;
    }
  }
  return best;
}

void ObjectiveParams::validate() const {
  if (!(desired_speed > 0.0) || !(max_brake > 0.0) || !(headway_cap > 0.0) ||
      !(margin_cap > 0.0) || !(safety_cap > 0.0) || !(lead_range > 0.0)) {
    throw std::invalid_argument("objective parameters must be positive");
  }
}

ObjectiveVector evaluate_objectives(std::span<const Snapshot> window,
                                    const ObjectiveParams& params) {
  if (window.size() < 3) throw std::invalid_argument("objective window needs >= 3 samples");
  params.validate();

  const auto n = static_cast<double>(window.size());
  double energy = 0.0, safety = 0.0, headway = 0.0, quickness = 0.0;
  double margin = params.margin_cap;
  for (const auto& s : window) {
    energy += std::max(0.0, s.ego_accel) * s.ego_speed;
    quickness += std::abs(s.ego_speed - params.desired_speed);

    auto lead = same_lane_lead(s);
    if (lead && lead->gap > params.lead_range) lead.reset();
    double time_gap = params.headway_cap;
    if (lead) {
      const double closing = s.ego_speed - lead->speed;
      if (closing > 0.0) safety = std::max(safety, std::min(params.safety_cap, closing / lead->gap));
      if (s.ego_speed >= kMinHeadwaySpeed) {
        time_gap = std::min(params.headway_cap, lead->gap / s.ego_speed);
      }
      const double m = lead->gap - s.ego_speed * s.ego_speed / (2.0 * params.max_brake);
      margin = std::min(margin, m);
    }
    headway += time_gap;
  }

  double jerk_sq = 0.0;
  for (std::size_t i = 1; i < window.size(); ++i) {
    const double h = window[i].time - window[i - 1].time;
    if (!(h > 0.0)) throw std::invalid_argument("objective window times must increase");
    const double jerk = (window[i].ego_accel - window[i - 1].ego_accel) / h;
    jerk_sq += jerk * jerk;
  }

  ObjectiveVector out{};
  at(out, ObjectiveKind::kEnergy) = energy / n;
  at(out, ObjectiveKind::kSafety) = safety;
  at(out, ObjectiveKind::kHeadway) = headway / n;
  at(out, ObjectiveKind::kComfort) = std::sqrt(jerk_sq / static_cast<double>(window.size() - 1));
  at(out, ObjectiveKind::kQuickness) = quickness / n;
  at(out, ObjectiveKind::kStoppingMargin) = margin;
  return out;
}

// --- knowledge base ---------------------------------------------------------

MissingKnowledge::MissingKnowledge(DrivingState state, ObjectiveKind kind)
    : Error("knowledge base has no entry for state '" + std::string(to_string(state)) +
            "' objective '" + std::string(to_string(kind)) + "'"),
      state_(state) {}

KnowledgeBase::KnowledgeBase(double window_seconds) : window_seconds_(window_seconds) {
  if (!(window_seconds > 0.0)) throw std::invalid_argument("window_seconds must be > 0");
}

void KnowledgeBase::set(DrivingState state, ObjectiveKind kind, DistributionSummary summary) {
  if (summary.sample_count < 1) throw std::invalid_argument("summary has no samples");
  summary.profile.above.validate();
  summary.profile.below.validate();
  entries_[{state, kind}] = std::move(summary);
}

const DistributionSummary* KnowledgeBase::find(DrivingState state, ObjectiveKind kind) const {
  const auto it = entries_.find({state, kind});
  return it == entries_.end() ? nullptr : &it->second;
}

const DistributionSummary& KnowledgeBase::at(DrivingState state, ObjectiveKind kind) const {
  const auto* s = find(state, kind);
  if (!s) throw MissingKnowledge(state, kind);
  return *s;
}

bool KnowledgeBase::covers(DrivingState state) const {
  return std::all_of(kAllObjectives.begin(), kAllObjectives.end(),
                     [&](ObjectiveKind k) { return find(state, k) != nullptr; });
}

std::vector<DrivingState> KnowledgeBase::states() const {
  std::vector<DrivingState> out;
  for (const auto& [key, _] : entries_) {
    if (out.empty() || out.back() != key.first) out.push_back(key.first);
  }
  return out;
}

std::size_t window_length(double window_seconds, double dt) {
  if (!(window_seconds > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("window_seconds and dt must be > 0");
  }
  const auto len = static_cast<std::size_t>(std::llround(window_seconds / dt)) + 1;
  if (len < 3) throw std::invalid_argument("window must span at least 3 samples");
  return len;
}

KnowledgeBase learn_knowledge(std::span<const Trace> traces, const LearnConfig& config) {
  if (traces.empty()) throw std::invalid_argument("learn_knowledge: no traces");
  config.so.validate();
  config.objectives.validate();

  std::map<KnowledgeBase::Key, std::vector<double>> pools;
  std::size_t windows = 0;
  for (const auto& trace : traces) {
    trace.validate();
    const std::size_t len = window_length(config.window_seconds, trace.dt);
    if (trace.samples.size() < len) continue;
    const std::span<const Snapshot> all(trace.samples);
    for (std::size_t end = len; end <= all.size(); ++end) {
      const auto window = all.subspan(end - len, len);
      const DrivingState state = detect_state(window.back(), config.zones);
      const ObjectiveVector values = evaluate_objectives(window, config.objectives);
      for (auto k : kAllObjectives) pools[{state, k}].push_back(sdl::at(values, k));
      ++windows;
    }
  }
  if (windows == 0) throw std::invalid_argument("learn_knowledge: every trace is shorter than the window");

  KnowledgeBase kb(config.window_seconds);
  for (auto& [key, values] : pools) {
    std::sort(values.begin(), values.end());
    kb.set(key.first, key.second,
           fit_summary(values, config.so, config.segment_count, config.coverage));
  }
  return kb;
}

std::string kb_to_json(const KnowledgeBase& kb) {
  json entries = json::array();
  for (const auto& [key, s] : kb.entries()) {
    entries.push_back(json{
        {"state", to_string(key.first)},
        {"objective", to_string(key.second)},
        {"center", s.center},
        {"sample_count", s.sample_count},
        {"dispersion", s.dispersion},
        {"profile_above", profile_to_json(s.profile.above)},
        {"profile_below", profile_to_json(s.profile.below)},
    });
  }
  json doc{{"format_version", kb.format_version()},
           {"window_seconds", kb.window_seconds()},
           {"entries", std::move(entries)}};
  return doc.dump(2) + "\n";
}

KnowledgeBase kb_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaViolation(std::string("knowledge base is not valid JSON: ") + e.what());
  }
  const auto& version = field(doc, "format_version");
  if (!version.is_number_integer()) throw SchemaViolation("format_version is not an integer");
  if (version.get<int>() != KnowledgeBase::kFormatVersion) {
    throw VersionMismatch("knowledge base format_version " + std::to_string(version.get<int>()) +
                          " is not supported (expected " +
                          std::to_string(KnowledgeBase::kFormatVersion) + ")");
  }
  const double window_seconds = real_field(doc, "window_seconds");
  if (!(window_seconds > 0.0)) throw SchemaViolation("window_seconds must be > 0");
  KnowledgeBase kb(window_seconds);

  const auto& entries = field(doc, "entries");
  if (!entries.is_array()) throw SchemaViolation("entries is not an array");
  for (const auto& e : entries) {
    const auto& state = field(e, "state");
    const auto& objective = field(e, "objective");
    const auto& count = field(e, "sample_count");
    if (!state.is_string() || !objective.is_string()) {
      throw SchemaViolation("state/objective must be strings");
    }
    if (!count.is_number_unsigned() || count.get<std::size_t>() < 1) {
      throw SchemaViolation("sample_count must be a positive integer");
    }
    DistributionSummary s;
    s.center = real_field(e, "center");
    s.sample_count = count.get<std::size_t>();
    s.dispersion = real_field(e, "dispersion");
    if (!(s.dispersion >= 0.0)) throw SchemaViolation("dispersion must be >= 0");
    s.profile.above = profile_from_json(field(e, "profile_above"));
    s.profile.below = profile_from_json(field(e, "profile_below"));
    try {
      const auto st = driving_state_from_string(state.get<std::string>());
      const auto ob = objective_kind_from_string(objective.get<std::string>());
      if (kb.find(st, ob)) throw SchemaViolation("duplicate entry");
      kb.set(st, ob, std::move(s));
    } catch (const std::invalid_argument& ex) {
      throw SchemaViolation(ex.what());
    }
  }
  return kb;
}

void save_kb(const KnowledgeBase& kb, const std::filesystem::path& path) {
  io::write_file_atomic(path, kb_to_json(kb));
}

KnowledgeBase load_kb(const std::filesystem::path& path) {
  return kb_from_json(io::read_file(path));
}

// --- trace CSV --------------------------------------------------------------

std::string trace_to_csv(const Trace& trace) {
  std::string out = "t,ego_pos,ego_speed,ego_accel,ego_lane";
  for (std::size_t k = 1; k <= kMaxCsvNeighbors; ++k) {
    const auto p = "n" + std::to_string(k);
    out += "," + p + "_pos," + p + "_speed," + p + "_lane";
  }
  out += '\n';
  for (const auto& s : trace.samples) {
    if (s.neighbors.size() > kMaxCsvNeighbors) {
      throw std::invalid_argument("trace CSV holds at most 4 neighbors");
    }
    out += io::format_real(s.time);
    out += ',' + io::format_real(s.ego_position);
    out += ',' + io::format_real(s.ego_speed);
    out += ',' + io::format_real(s.ego_accel);
    out += ',' + std::to_string(s.ego_lane);
    for (std::size_t k = 0; k < kMaxCsvNeighbors; ++k) {
      if (k < s.neighbors.size()) {
        const auto& n = s.neighbors[k];
        out += ',' + io::format_real(n.position) + ',' + io::format_real(n.speed) + ',' +
               std::to_string(n.lane);
      } else {
        out += ",,,";
      }
    }
    out += '\n';
  }
  return out;
}

Trace trace_from_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  for (auto line : io::split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw SchemaViolation("trace CSV is empty");

  const auto header = io::split(lines[0], ',');
  static constexpr std::array<std::string_view, 5> kEgo = {"t", "ego_pos", "ego_speed",
                                                           "ego_accel", "ego_lane"};
  if (header.size() < kEgo.size() || (header.size() - kEgo.size()) % 3 != 0 ||
      (header.size() - kEgo.size()) / 3 > kMaxCsvNeighbors) {
    throw SchemaViolation("unexpected trace CSV header");
  }
  for (std::size_t i = 0; i < kEgo.size(); ++i) {
    if (header[i] != kEgo[i]) throw SchemaViolation("unexpected trace CSV column " + std::string(header[i]));
  }
  const std::size_t groups = (header.size() - kEgo.size()) / 3;
  for (std::size_t k = 0; k < groups; ++k) {
    const auto p = "n" + std::to_string(k + 1);
    if (header[5 + 3 * k] != p + "_pos" || header[6 + 3 * k] != p + "_speed" ||
        header[7 + 3 * k] != p + "_lane") {
      throw SchemaViolation("unexpected neighbor columns for " + p);
    }
  }

  Trace trace;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto f = io::split(lines[r], ',');
    if (f.size() != header.size()) {
      throw SchemaViolation("row " + std::to_string(r) + " has " + std::to_string(f.size()) +
                            " fields, expected " + std::to_string(header.size()));
    }
    Snapshot s;
    s.time = io::parse_real(f[0]);
    s.ego_position = io::parse_real(f[1]);
    s.ego_speed = io::parse_real(f[2]);
    s.ego_accel = io::parse_real(f[3]);
    s.ego_lane = static_cast<int>(io::parse_int(f[4]));
    for (std::size_t k = 0; k < groups; ++k) {
      const auto pos = f[5 + 3 * k], speed = f[6 + 3 * k], lane = f[7 + 3 * k];
      if (pos.empty() && speed.empty() && lane.empty()) continue;
      if (pos.empty() || speed.empty() || lane.empty()) {
        throw SchemaViolation("partially filled neighbor in row " + std::to_string(r));
      }
      s.neighbors.push_back(
          {io::parse_real(pos), io::parse_real(speed), static_cast<int>(io::parse_int(lane))});
    }
    trace.samples.push_back(std::move(s));
  }
  if (trace.samples.size() < 2) throw SchemaViolation("trace needs at least 2 rows");
  trace.dt = trace.samples[1].time - trace.samples[0].time;
  try {
    trace.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaViolation(e.what());
  }
  return trace;
}

void save_trace(const Trace& trace, const std::filesystem::path& path) {
  io::write_file_atomic(path, trace_to_csv(trace));
}

Trace load_trace(const std::filesystem::path& path) {
  return trace_from_csv(io::read_file(path));
}

}  // namespace sdl
