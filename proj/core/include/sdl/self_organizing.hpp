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

#include <cstddef>
#include <span>
#include <vector>

#include "sdl/leap.hpp"
#include "sdl/prob.hpp"

namespace sdl {

struct SOConfig {
  /// Distance used for membership. Scalar samples accept the Minkowski
  /// family (euclidean, manhattan, chebyshev, minkowski); all reduce to |x - a|.
  Scale scale = Scale::euclidean();
  /// Smallest membership radius, in sample units.
  double window_halfwidth = 1.0;
  int max_iterations = 100;
  double tolerance = 1e-9;
  /// Coupling of the membership radius to the previous scale value M.
  /// While radius = max(window_halfwidth, scale_feedback * M) is above the
  /// floor, each step keeps the densest window of that radius inside the
  /// previous members, starting from the whole sample. 0 disables the
  /// contraction and uses a fixed window around the initial center. Must be
  /// below 1.
  double scale_feedback = 0.9;

  void validate() const;
};

struct SOResult {
  double center = 0.0;
  std::vector<std::size_t> members;
  double scale_value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Alternates center, scale and member-set updates so the member set drifts
/// toward the region of maximum probability.
///
/// Each step picks a member set from the previous center and scale, moves the
/// center to the members' mean and takes their mean absolute deviation as the
/// new scale. Above the radius floor the member set is the densest window
/// inside the previous members (see SOConfig::scale_feedback). At the floor
/// the members are the samples within window_halfwidth of the previous
/// center; an empty selection falls back to the single nearest sample
/// (lowest index on ties). Stops once the center moves less than `tolerance`
/// at the floor, or after `max_iterations` with converged = false.
SOResult self_organize(std::span<const double> samples, double init_center,
                       const SOConfig& config);

/// Median of a nonempty sample (mean of the two middle values for even n).
double median(std::span<const double> samples);

/// Runs self_organize from the sample median, then builds the deviation
/// profile around the converged center over all samples.
DistributionSummary fit_summary(std::span<const double> samples, const SOConfig& config,
                                std::size_t segment_count,
                                double coverage = kDefaultCoverage);

}  // namespace sdl
