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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sdl/random.hpp"

namespace sdl::test {

inline constexpr std::uint64_t kFixtureSeed = 20261016;

/// 700 draws of N(0,1) followed by 300 of N(10,1).
inline std::vector<double> bimodal_fixture(std::uint64_t seed = kFixtureSeed) {
  Rng rng(seed);
  std::vector<double> xs;
  for (int i = 0; i < 700; ++i) xs.push_back(rng.normal(0.0, 1.0));
  for (int i = 0; i < 300; ++i) xs.push_back(rng.normal(10.0, 1.0));
  return xs;
}

inline int count_within(const std::vector<double>& xs, double center, double h) {
  return static_cast<int>(
      std::count_if(xs.begin(), xs.end(), [&](double x) { return std::abs(x - center) <= h; }));
}

/// Centers of all maximum-count windows of halfwidth h that have a sample on
/// an edge. Every optimal window can be slid until one edge meets a sample,
/// so these bound the optimum.
inline std::vector<double> brute_force_modes(const std::vector<double>& xs, double h) {
  int best = -1;
  std::vector<double> out;
  for (double x : xs) {
    for (double c : {x - h, x + h}) {
      const int n = count_within(xs, c, h);
      if (n > best) {
        best = n;
        out.clear();
      }
      if (n == best) out.push_back(c);
    }
  }
  return out;
}

/// Random mixture of 1-3 normal components, 5-50 samples.
inline std::vector<double> random_mixture(Rng& g) {
  const auto n = g.uniform_int(5, 50);
  const auto k = g.uniform_int(1, 3);
  std::vector<double> c(static_cast<std::size_t>(k)), sd(c.size()), w(c.size());
  double ws = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    c[j] = g.uniform(0, 20);
    sd[j] = g.uniform(0.2, 1.0);
    w[j] = g.uniform();
    ws += w[j];
  }
  std::vector<double> xs;
  for (std::int64_t i = 0; i < n; ++i) {
    double u = g.uniform() * ws;
    std::size_t j = 0;
    while (j + 1 < c.size() && u > w[j]) u -= w[j++];
    xs.push_back(g.normal(c[j], sd[j]));
  }
  return xs;
}

}  // namespace sdl::test
