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
#include "sdl/self_organizing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sdl {
namespace {

double scalar_distance(const Scale& scale, double a, double b) {
  const double d = std::abs(a - b);
  switch (scale.kind) {
    case ScaleKind::kEuclidean:
    case ScaleKind::kManhattan:
    case ScaleKind::kChebyshev:
    case ScaleKind::kMinkowski:
      return d;
    default:
      throw std::invalid_argument("scale kind not usable for scalar clustering");
  }
}

}  // namespace

void SOConfig::validate() const {
  if (!(window_halfwidth > 0.0)) throw std::invalid_argument("window_halfwidth must be > 0");
  if (max_iterations <= 0) throw std::invalid_argument("max_iterations must be > 0");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (!(scale_feedback >= 0.0 && scale_feedback < 1.0)) {
    throw std::invalid_argument("scale_feedback must lie in [0, 1)");
  }
  (void)scalar_distance(scale, 0.0, 0.0);
}

SOResult self_organize(std::span<const double> samples, double init_center,
                       const SOConfig& config) {
  if (samples.empty()) throw std::invalid_argument("self_organize: no samples");
  config.validate();

  const double h = config.window_halfwidth;
  const auto n = samples.size();
  SOResult result;
  double center = init_center;

  // Contraction phase: members are a contiguous run of the sorted samples.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return samples[a] < samples[b]; });
  std::size_t run_lo = 0, run_hi = n;

  double radius = h;
  if (config.scale_feedback > 0.0) {
    for (double x : samples) radius = std::max(radius, scalar_distance(config.scale, x, center));
  }

  std::vector<std::size_t> members;
  members.reserve(n);
  for (int it = 1; it <= config.max_iterations; ++it) {
    const bool at_floor = radius <= h;
    members.clear();
    if (!at_floor) {
      // Densest window of width 2*radius inside the previous members; ties go
      // to the window centered nearest the previous center, then leftmost.
      std::size_t best_lo = run_lo, best_hi = run_lo + 1;
      double best_offset = std::numeric_limits<double>::infinity();
      std::size_t j = run_lo;
      for (std::size_t i = run_lo; i < run_hi; ++i) {
        j = std::max(j, i + 1);
        while (j < run_hi && samples[order[j]] - samples[order[i]] <= 2.0 * radius) ++j;
        const double offset = std::abs(samples[order[i]] + radius - center);
        if (j - i > best_hi - best_lo || (j - i == best_hi - best_lo && offset < best_offset)) {
          best_lo = i;
          best_hi = j;
          best_offset = offset;
        }
      }
      run_lo = best_lo;
      run_hi = best_hi;
      for (std::size_t k = run_lo; k < run_hi; ++k) members.push_back(order[k]);
      std::sort(members.begin(), members.end());
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (scalar_distance(config.scale, samples[i], center) <= h) members.push_back(i);
      }
      if (members.empty()) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
          const double d = scalar_distance(config.scale, samples[i], center);
          if (d < best_d) {
            best_d = d;
            best = i;
          }
        }
        members.push_back(best);
      }
    }

    double sum = 0.0;
    for (auto i : members) sum += samples[i];
    const double next = sum / static_cast<double>(members.size());
    double mad = 0.0;
    for (auto i : members) mad += std::abs(samples[i] - next);
    mad /= static_cast<double>(members.size());

    const bool settled = std::abs(next - center) < config.tolerance;
    center = next;
    result.iterations = it;
    result.scale_value = mad;
    if (settled && at_floor) {
      result.converged = true;
      break;
    }
    radius = std::max(h, config.scale_feedback * mad);
  }

  // The mean of members never leaves the sample hull; clamp rounding drift.
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  result.center = std::clamp(center, *lo, *hi);
  result.members = members;
  return result;
}

double median(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("median of empty sample");
  std::vector<double> v(samples.begin(), samples.end());
  const auto mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double upper = v[mid];
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

DistributionSummary fit_summary(std::span<const double> samples, const SOConfig& config,
                                std::size_t segment_count, double coverage) {
  if (samples.empty()) throw std::invalid_argument("fit_summary: no samples");
  const SOResult so = self_organize(samples, median(samples), config);
  DistributionSummary out;
  out.center = so.center;
  out.profile = profile_from_samples(samples, so.center, segment_count, coverage);
  out.sample_count = samples.size();
  out.dispersion = so.scale_value;
  return out;
}

}  // namespace sdl
