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
#include "sdl/fuzzy.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sdl {

void MembershipSpec::validate() const {
  if (!(left_halfwidth > 0.0) || !(right_halfwidth > 0.0)) {
    throw std::invalid_argument("membership halfwidths must be positive");
  }
}

double MembershipSpec::operator()(double value) const {
  const double d = value - center;
  const double m = d >= 0.0 ? 1.0 - d / right_halfwidth : 1.0 + d / left_halfwidth;
  return std::clamp(m, 0.0, 1.0);
}

MappingSpecSet::MappingSpecSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw std::invalid_argument("mapping set is empty");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate mapping name: " + n);
  }
}

std::vector<double> astrict(std::span<const double> values,
                            std::span<const MembershipSpec> specs) {
  if (values.size() != specs.size()) {
    throw std::invalid_argument("astrict: values and specs differ in length");
  }
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    specs[i].validate();
    out[i] = specs[i](values[i]);
  }
  return out;
}

std::size_t optimal_control_point(std::span<const std::vector<double>> candidates,
                                  std::span<const MembershipSpec> specs) {
  if (candidates.empty()) throw std::invalid_argument("no candidates");
  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const auto m = astrict(candidates[k], specs);
    const double score = m.empty() ? 1.0 : *std::min_element(m.begin(), m.end());
    if (score > best_score) {
      best_score = score;
      best = k;
    }
  }
  return best;
}

}  // namespace sdl
