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
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sdl/error.hpp"
#include "sdl/leap.hpp"
#include "sdl/self_organizing.hpp"

namespace sdl {

// Ego-neighbor configurations. Values match the conventional state numbers.
enum class DrivingState : int {
  kFreeRoad = 1,
  kLeftBehind = 2,
  kLeftFront = 3,
  kLeftSide = 4,
  kRightBehind = 5,
  kRightFront = 6,
  kRightSide = 7,
  kFront = 8,
  kBehind = 9,
};

inline constexpr std::array<DrivingState, 9> kAllStates = {
    DrivingState::kFreeRoad,   DrivingState::kLeftBehind,  DrivingState::kLeftFront,
    DrivingState::kLeftSide,   DrivingState::kRightBehind, DrivingState::kRightFront,
    DrivingState::kRightSide,  DrivingState::kFront,       DrivingState::kBehind,
};

std::string_view to_string(DrivingState state);
DrivingState driving_state_from_string(std::string_view name);

enum class ObjectiveKind : int {
  kEnergy = 0,
  kSafety,
  kHeadway,
  kComfort,
  kQuickness,
  kStoppingMargin,
};

inline constexpr std::size_t kObjectiveCount = 6;
inline constexpr std::array<ObjectiveKind, kObjectiveCount> kAllObjectives = {
    ObjectiveKind::kEnergy,  ObjectiveKind::kSafety,    ObjectiveKind::kHeadway,
    ObjectiveKind::kComfort, ObjectiveKind::kQuickness, ObjectiveKind::kStoppingMargin,
};

std::string_view to_string(ObjectiveKind kind);
ObjectiveKind objective_kind_from_string(std::string_view name);

/// Indexed by ObjectiveKind.
using ObjectiveVector = std::array<double, kObjectiveCount>;

inline double& at(ObjectiveVector& v, ObjectiveKind k) { return v[static_cast<std::size_t>(k)]; }
inline double at(const ObjectiveVector& v, ObjectiveKind k) {
  return v[static_cast<std::size_t>(k)];
}

struct Neighbor {
  double position = 0.0;
  double speed = 0.0;
  int lane = 0;

  bool operator==(const Neighbor&) const = default;
};

/// Kinematic state at one instant. Positions are longitudinal; lane numbers
/// grow to the right, so lane - 1 is the left neighbor lane.
struct Snapshot {
  double time = 0.0;
  double ego_position = 0.0;
  double ego_speed = 0.0;
  double ego_accel = 0.0;
  int ego_lane = 0;
  std::vector<Neighbor> neighbors;

  bool operator==(const Snapshot&) const = default;
};

struct Trace {
  double dt = 0.1;
  std::vector<Snapshot> samples;

  /// Throws std::invalid_argument unless dt > 0, there are >= 2 samples,
  /// steps are uniform within 1e-9 and ego speeds are nonnegative.
  void validate() const;

  bool operator==(const Trace&) const = default;
};

/// Gap to the nearest same-lane vehicle strictly ahead and its speed.
struct LeadInfo {
  double gap = 0.0;
  double speed = 0.0;
};
std::optional<LeadInfo> same_lane_lead(const Snapshot& snapshot);

struct ZoneParams {
  double front_range = 60.0;   // same or adjacent lane, ahead
  double behind_range = 30.0;  // same or adjacent lane, behind
  double side_range = 10.0;    // adjacent lane, |dx| below this is alongside
};

/// Total classification. The nearest matching neighbor wins; equal distances
/// resolve by Front > Behind > sides > diagonal states.
DrivingState detect_state(const Snapshot& snapshot, const ZoneParams& zones = {});

struct ObjectiveParams {
  double desired_speed = 25.0;  // m/s
  double max_brake = 6.0;       // m/s^2, for the stopping margin
  double headway_cap = 10.0;    // s, used without a lead or when nearly stopped
  double margin_cap = 200.0;    // m, used without a lead
  double safety_cap = 10.0;     // 1/s, bound on inverse time to collision
  double lead_range = 60.0;     // m, leads farther away are ignored

  void validate() const;
};

/// Six objective values over a window of >= 3 snapshots. Only a lead within
/// lead_range counts:
///   energy          mean of max(0, a) * v                     (W/kg)
///   safety          max of closing speed / gap to the lead    (1/s)
///   headway         mean of gap / v                            (s)
///   comfort         RMS of the finite-difference jerk          (m/s^3)
///   quickness       mean of |v - desired_speed|                (m/s)
///   stopping_margin min of gap - v^2 / (2 max_brake)           (m)
ObjectiveVector evaluate_objectives(std::span<const Snapshot> window,
                                    const ObjectiveParams& params);

class MissingKnowledge : public Error {
 public:
  MissingKnowledge(DrivingState state, ObjectiveKind kind);
  DrivingState state() const { return state_; }

 private:
  DrivingState state_;
};

/// Per (driving state, objective) distribution summaries learned from expert
/// driving.
class KnowledgeBase {
 public:
  static constexpr int kFormatVersion = 1;
  using Key = std::pair<DrivingState, ObjectiveKind>;

  explicit KnowledgeBase(double window_seconds);

  void set(DrivingState state, ObjectiveKind kind, DistributionSummary summary);
  const DistributionSummary* find(DrivingState state, ObjectiveKind kind) const;
  /// Throws MissingKnowledge.
  const DistributionSummary& at(DrivingState state, ObjectiveKind kind) const;
  /// True when all six objectives are present for `state`.
  bool covers(DrivingState state) const;
  std::vector<DrivingState> states() const;

  const std::map<Key, DistributionSummary>& entries() const { return entries_; }
  double window_seconds() const { return window_seconds_; }
  int format_version() const { return kFormatVersion; }
  bool empty() const { return entries_.empty(); }

  bool operator==(const KnowledgeBase&) const = default;

 private:
  double window_seconds_;
  std::map<Key, DistributionSummary> entries_;
};

struct LearnConfig {
  SOConfig so{.window_halfwidth = 0.3};
  double window_seconds = 1.0;
  std::size_t segment_count = 4;
  double coverage = kDefaultCoverage;
  ObjectiveParams objectives;
  ZoneParams zones;
};

/// Number of snapshots in a window of `window_seconds` at step `dt`.
std::size_t window_length(double window_seconds, double dt);

/// Slides a window over every trace, labels it with the state of its last
/// snapshot and fits one summary per (state, objective) from the pooled
/// values. States without windows are absent.
KnowledgeBase learn_knowledge(std::span<const Trace> traces, const LearnConfig& config);

std::string kb_to_json(const KnowledgeBase& kb);
/// Throws VersionMismatch or SchemaViolation.
KnowledgeBase kb_from_json(std::string_view text);
void save_kb(const KnowledgeBase& kb, const std::filesystem::path& path);
KnowledgeBase load_kb(const std::filesystem::path& path);

inline constexpr std::size_t kMaxCsvNeighbors = 4;

/// CSV with header t,ego_pos,ego_speed,ego_accel,ego_lane followed by
/// n{k}_pos,n{k}_speed,n{k}_lane for k = 1..4. Absent neighbors leave
/// their fields empty. Reals use the shortest round-trip form.
std::string trace_to_csv(const Trace& trace);
Trace trace_from_csv(std::string_view text);
void save_trace(const Trace& trace, const std::filesystem::path& path);
Trace load_trace(const std::filesystem::path& path);

}  // namespace sdl
