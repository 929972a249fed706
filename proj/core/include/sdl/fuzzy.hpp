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
#include <string>
#include <vector>

namespace sdl {

/// Asymmetric triangular membership: 1 at `center`, falling linearly to 0
/// at center - left_halfwidth and center + right_halfwidth.
struct MembershipSpec {
  double center = 0.0;
  double left_halfwidth = 1.0;
  double right_halfwidth = 1.0;

  void validate() const;
  double operator()(double value) const;
};

/// Names of the views one input is expanded into (one input, many spaces).
class MappingSpecSet {
 public:
  explicit MappingSpecSet(std::vector<std::string> names);

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }

  bool operator==(const MappingSpecSet&) const = default;

 private:
  std::vector<std::string> names_;
};

/// Maps each objective value into the shared [0,1] membership space
/// (many spaces into one).
std::vector<double> astrict(std::span<const double> values,
                            std::span<const MembershipSpec> specs);

/// Max-min fuzzy decision: the candidate whose worst membership is largest.
/// Ties go to the lowest index.
std::size_t optimal_control_point(std::span<const std::vector<double>> candidates,
                                  std::span<const MembershipSpec> specs);

}  // namespace sdl
