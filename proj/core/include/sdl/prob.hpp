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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace sdl {

// Point-to-reference distance scales.
enum class ScaleKind {
  kEuclidean,
  kManhattan,
  kChebyshev,
  kMinkowski,
  kCosine,
  kMahalanobis,
  kHamming,
  kJaccard,
};

/// A scale kind plus its parameter. Only Minkowski uses `p`.
struct Scale {
  ScaleKind kind = ScaleKind::kEuclidean;
  double p = 2.0;

  static Scale euclidean() { return {ScaleKind::kEuclidean, 2.0}; }
  static Scale minkowski(double p);
  static Scale of(ScaleKind kind) { return {kind, 2.0}; }
};

std::string_view to_string(ScaleKind kind);
ScaleKind scale_kind_from_string(std::string_view name);

enum class DivergenceKind { kKl, kPearson, kWasserstein1d };

/// Finite distribution on the real line. Support strictly ascending, masses
/// in [0,1] summing to 1 within 1e-9.
class DiscreteDistribution {
 public:
  DiscreteDistribution(std::vector<double> support, std::vector<double> mass);

  static DiscreteDistribution point_mass(double at);
  static DiscreteDistribution uniform(std::vector<double> support);

  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& mass() const { return mass_; }
  std::size_t size() const { return support_.size(); }

  bool operator==(const DiscreteDistribution&) const = default;

 private:
  std::vector<double> support_;
  std::vector<double> mass_;
};

/// Mean and symmetric positive definite covariance.
class GaussianSummary {
 public:
  GaussianSummary(Eigen::VectorXd mean, Eigen::MatrixXd covariance);

  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& covariance() const { return covariance_; }

  /// Mahalanobis distance of x from the mean.
  double distance(std::span<const double> x) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd covariance_;
  Eigen::LLT<Eigen::MatrixXd> chol_;
};

/// Distance of `x` from `center` under `scale`. Mahalanobis needs `cov`.
/// Cosine returns 1 - cos(x, center) in [0, 2]. Hamming and Jaccard read
/// components >= 0.5 as true.
double scale_distance(const Scale& scale, std::span<const double> x,
                      std::span<const double> center,
                      const std::optional<Eigen::MatrixXd>& cov = std::nullopt);

/// KL and Pearson (chi-square) need identical supports; KL is in nats.
/// Wasserstein is the order-1 transport cost on the line for any supports.
double divergence(DivergenceKind kind, const DiscreteDistribution& p,
                  const DiscreteDistribution& q);

/// Shannon entropy in nats.
double entropy(const DiscreteDistribution& p);

/// Probability of a fuzzy event: sum of membership times mass.
double fuzzy_event_probability(std::span<const double> membership,
                               const DiscreteDistribution& p);

}  // namespace sdl
