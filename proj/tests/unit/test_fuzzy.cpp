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
#include <algorithm>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sdl/fuzzy.hpp"
#include "sdl/random.hpp"

using namespace sdl;

TEST_CASE("astrict examples") {
  const std::vector<MembershipSpec> specs{{2.0, 1.0, 4.0}};
  CHECK(astrict(std::vector<double>{2.0}, specs)[0] == 1.0);
  CHECK(astrict(std::vector<double>{6.0}, specs)[0] == 0.0);
  CHECK(astrict(std::vector<double>{4.0}, specs)[0] == doctest::Approx(0.5));
  CHECK(astrict(std::vector<double>{1.5}, specs)[0] == doctest::Approx(0.5));
  CHECK(astrict(std::vector<double>{-9.0}, specs)[0] == 0.0);
  CHECK_THROWS_AS(astrict(std::vector<double>{1, 2}, specs), std::invalid_argument);
  CHECK_THROWS_AS((MembershipSpec{0.0, 0.0, 1.0}.validate()), std::invalid_argument);
}

TEST_CASE("astrict stays in [0,1] and falls off with distance") {
  Rng rng(12);
  for (int t = 0; t < 1000; ++t) {
    const MembershipSpec s{rng.uniform(-5, 5), rng.uniform(0.1, 3), rng.uniform(0.1, 3)};
    const double a = rng.uniform(-10, 10);
    const double m = s(a);
    CHECK(m >= 0.0);
    CHECK(m <= 1.0);
    // Moving farther from the center on the same side never raises membership.
    const double farther = a >= s.center ? a + rng.uniform(0, 2) : a - rng.uniform(0, 2);
    CHECK(s(farther) <= m);
  }
}

TEST_CASE("optimal_control_point examples") {
  // Identity-like specs so memberships equal the listed values.
  const std::vector<MembershipSpec> specs{{1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}};
  const std::vector<std::vector<double>> one{{0.3, 0.3}};
  CHECK(optimal_control_point(one, specs) == 0);
  const std::vector<std::vector<double>> ab{{0.9, 0.2}, {0.6, 0.5}};
  CHECK(optimal_control_point(ab, specs) == 1);
  const std::vector<std::vector<double>> tie{{0.5, 0.7}, {0.7, 0.5}};
  CHECK(optimal_control_point(tie, specs) == 0);
  CHECK_THROWS_AS(optimal_control_point(std::vector<std::vector<double>>{}, specs),
                  std::invalid_argument);
  const std::vector<std::vector<double>> ragged{{0.5}};
  CHECK_THROWS_AS(optimal_control_point(ragged, specs), std::invalid_argument);
}

TEST_CASE("dominated candidates are never chosen and order is respected") {
  Rng rng(44);
  const std::vector<MembershipSpec> specs{{0, 1, 1}, {0, 2, 2}, {0, 1, 3}};
  for (int t = 0; t < 300; ++t) {
    std::vector<std::vector<double>> cands;
    const auto n = rng.uniform_int(1, 6);
    for (int i = 0; i < n; ++i) {
      cands.push_back({rng.uniform(-1, 1), rng.uniform(-2, 2), rng.uniform(-1, 3)});
    }
    const auto chosen = optimal_control_point(cands, specs);

    // A candidate farther from every center than the chosen one, on the same
    // sides, has memberships no higher anywhere.
    auto worse = cands[chosen];
    for (auto& x : worse) x += x >= 0 ? 5.0 : -5.0;
    auto extended = cands;
    extended.push_back(worse);
    CHECK(optimal_control_point(extended, specs) == chosen);

    // Reversing the list maps the choice accordingly, up to ties.
    auto reversed = cands;
    std::reverse(reversed.begin(), reversed.end());
    const auto r = optimal_control_point(reversed, specs);
    const auto score = [&](const std::vector<double>& c) {
      const auto m = astrict(c, specs);
      return *std::min_element(m.begin(), m.end());
    };
    CHECK(score(reversed[r]) == score(cands[chosen]));
  }
}

TEST_CASE("mapping spec set") {
  CHECK(MappingSpecSet({"identity", "row_profile"}).size() == 2);
  CHECK_THROWS_AS(MappingSpecSet({}), std::invalid_argument);
  CHECK_THROWS_AS(MappingSpecSet({"identity", "identity"}), std::invalid_argument);
}
