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

// Distance from a point to the center of a learned distribution where each
// coordinate's deviation is first reduced by a directional tolerance margin.
// Deviations that fall inside the margin count as zero.

namespace sdl {

/// Segmented spread of a distribution on one side of its center.
///
/// Segment i spans [boundaries[i-1], boundaries[i]) measured outward from
/// the center, with an implicit boundaries[-1] = 0. masses[i] is the share of
/// all samples that fell into segment i.
struct DeviationProfile {
  std::vector<double> boundaries;
  std::vector<double> masses;

  /// Throws std::invalid_argument unless lengths match, boundaries are
  /// strictly ascending and start above 0, masses lie in [0,1] and sum to at
  /// most 1 + 1e-9.
  void validate() const;

  bool operator==(const DeviationProfile&) const = default;
};

struct TwoSidedProfile {
  DeviationProfile above;
  DeviationProfile below;

  bool operator==(const TwoSidedProfile&) const = default;
};

/// Learned summary of one scalar quantity.
struct DistributionSummary {
  double center = 0.0;
  TwoSidedProfile profile;
  std::size_t sample_count = 0;
  double dispersion = 0.0;

  bool operator==(const DistributionSummary&) const = default;
};

/// Margin of a profile: sum of segment midpoint distance times segment mass.
double delta_margin(const DeviationProfile& profile);

/// Margin that applies when moving from `center` toward `toward`.
double directional_margin(const DistributionSummary& summary, double toward);

/// Root of summed squared clamped deviations. Coordinate j deviates by
/// |w_j - v_j| less the margin on the side of v_j facing w_j, floored at 0.
/// summaries[j].center must equal v[j] within 1e-9.
double leap_distance(std::span<const double> w, std::span<const double> v,
                     std::span<const DistributionSummary> summaries);

/// Convenience overload using each summary's center as v.
double leap_distance(std::span<const double> w,
                     std::span<const DistributionSummary> summaries);

inline constexpr double kDefaultCoverage = 0.99;

/// Bins |x - center| on each side into `segment_count` equal-width segments
/// spanning [0, q], q being the coverage-quantile (nearest rank) of that
/// side's deviations. Masses are divided by the total sample count, so both
/// sides together carry at most 1. Samples equal to the center, or beyond q,
/// land in no segment.
TwoSidedProfile profile_from_samples(std::span<const double> samples, double center,
                                     std::size_t segment_count,
                                     double coverage = kDefaultCoverage);

}  // namespace sdl
