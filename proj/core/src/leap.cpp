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
#include "sdl/leap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sdl {
namespace {

constexpr double kCenterTolerance = 1e-9;

DeviationProfile bin_side(std::vector<double> deviations, std::size_t total,
                          std::size_t segment_count, double coverage) {
  DeviationProfile out;
  if (deviations.empty()) return out;
  std::sort(deviations.begin(), deviations.end());

  // Nearest-rank quantile; the epsilon keeps 0.99 * 100 from rounding to 100.
  const auto n = deviations.size();
  auto rank = static_cast<std::size_t>(std::ceil(coverage * static_cast<double>(n) - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, n);
  const double q = deviations[rank - 1];
  if (!(q > 0.0)) return out;

  const double width = q / static_cast<double>(segment_count);
  out.boundaries.resize(segment_count);
  for (std::size_t i = 0; i < segment_count; ++i) {
    out.boundaries[i] = width * static_cast<double>(i + 1);
  }
  out.boundaries.back() = q;

  std::vector<std::size_t> counts(segment_count, 0);
  for (double d : deviations) {
    if (d > q) break;
    auto idx = static_cast<std::size_t>(d / width);
    // Right-open segments except the last, which is closed at q.
    while (idx > 0 && d < out.boundaries[idx - 1]) --idx;
    while (idx + 1 < segment_count && d >= out.boundaries[idx]) ++idx;
    idx = std::min(idx, segment_count - 1);
    ++counts[idx];
  }
  out.masses.resize(segment_count);
  for (std::size_t i = 0; i < segment_count; ++i) {
    out.masses[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return out;
}

}  // namespace

void DeviationProfile::validate() const {
  if (boundaries.size() != masses.size()) {
    throw std::invalid_argument("profile boundaries and masses differ in length");
  }
  double prev = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    if (!(boundaries[i] > prev) || !std::isfinite(boundaries[i])) {
      throw std::invalid_argument("profile boundaries must be finite, positive and strictly ascending");
    }
    prev = boundaries[i];
    if (!(masses[i] >= 0.0 && masses[i] <= 1.0)) {
      throw std::invalid_argument("profile mass outside [0,1]");
    }
    total += masses[i];
  }
  if (total > 1.0 + 1e-9) throw std::invalid_argument("profile masses exceed 1");
}

double delta_margin(const DeviationProfile& profile) {
  profile.validate();
  double margin = 0.0;
  double lower = 0.0;
  for (std::size_t i = 0; i < profile.boundaries.size(); ++i) {
    const double mid = 0.5 * (lower + profile.boundaries[i]);
    margin += mid * profile.masses[i];
    lower = profile.boundaries[i];
  }
  return margin;
}

double directional_margin(const DistributionSummary& summary, double toward) {
  if (toward > summary.center) return delta_margin(summary.profile.above);
  if (toward < summary.center) return delta_margin(summary.profile.below);
  return 0.0;
}

double leap_distance(std::span<const double> w, std::span<const double> v,
                     std::span<const DistributionSummary> summaries) {
  if (w.size() != v.size() || w.size() != summaries.size()) {
    throw std::invalid_argument("leap_distance: dimension mismatch (" +
                                std::to_string(w.size()) + ", " + std::to_string(v.size()) +
                                ", " + std::to_string(summaries.size()) + ")");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (std::abs(summaries[j].center - v[j]) > kCenterTolerance) {
      throw std::invalid_argument("leap_distance: summary " + std::to_string(j) +
                                  " is not centered at v");
    }
    const double gap = std::abs(w[j] - v[j]);
    const double margin = directional_margin(summaries[j], w[j]);
    const double clamped = gap <= margin ? 0.0 : gap - margin;
    sum += clamped * clamped;
  }
  return std::sqrt(sum);
}

double leap_distance(std::span<const double> w,
                     std::span<const DistributionSummary> summaries) {
  std::vector<double> v(summaries.size());
  std::transform(summaries.begin(), summaries.end(), v.begin(),
                 [](const DistributionSummary& s) { return s.center; });
  return leap_distance(w, v, summaries);
}

TwoSidedProfile profile_from_samples(std::span<const double> samples, double center,
                                     std::size_t segment_count, double coverage) {
  if (samples.empty()) throw std::invalid_argument("profile_from_samples: no samples");
  if (segment_count == 0) throw std::invalid_argument("segment_count must be >= 1");
  if (!(coverage > 0.0 && coverage <= 1.0)) {
    throw std::invalid_argument("coverage must lie in (0, 1]");
  }
  std::vector<double> above, below;
  for (double x : samples) {
    if (x > center) above.push_back(x - center);
    else if (x < center) below.push_back(center - x);
  }
  TwoSidedProfile out;
  out.above = bin_side(std::move(above), samples.size(), segment_count, coverage);
  out.below = bin_side(std::move(below), samples.size(), segment_count, coverage);
  return out;
}

}  // namespace sdl
