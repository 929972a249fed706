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
#include "sdl/prob.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sdl {
namespace {

constexpr double kMassTolerance = 1e-9;
constexpr double kBoolThreshold = 0.5;

void require_same_dim(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()));
  }
}

void require_same_support(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  if (p.support() != q.support()) {
    throw std::invalid_argument("divergence requires identical supports");
  }
}

double wasserstein_1d(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  // Integrate |F_p - F_q| over the merged support.
  std::vector<double> xs = p.support();
  xs.insert(xs.end(), q.support().begin(), q.support().end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  double cdf_p = 0.0, cdf_q = 0.0, total = 0.0;
  std::size_t ip = 0, iq = 0;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    while (ip < p.size() && p.support()[ip] <= xs[k]) cdf_p += p.mass()[ip++];
    while (iq < q.size() && q.support()[iq] <= xs[k]) cdf_q += q.mass()[iq++];
    total += std::abs(cdf_p - cdf_q) * (xs[k + 1] - xs[k]);
  }
  return total;
}

}  // namespace

Scale Scale::minkowski(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::invalid_argument("minkowski p must be finite and positive");
  }
  return {ScaleKind::kMinkowski, p};
}

std::string_view to_string(ScaleKind kind) {
  switch (kind) {
    case ScaleKind::kEuclidean: return "euclidean";
    case ScaleKind::kManhattan: return "manhattan";
    case ScaleKind::kChebyshev: return "chebyshev";
    case ScaleKind::kMinkowski: return "minkowski";
    case ScaleKind::kCosine: return "cosine";
    case ScaleKind::kMahalanobis: return "mahalanobis";
    case ScaleKind::kHamming: return "hamming";
    case ScaleKind::kJaccard: return "jaccard";
  }
  return "unknown";
}

ScaleKind scale_kind_from_string(std::string_view name) {
  for (auto k : {ScaleKind::kEuclidean, ScaleKind::kManhattan, ScaleKind::kChebyshev,
                 ScaleKind::kMinkowski, ScaleKind::kCosine, ScaleKind::kMahalanobis,
                 ScaleKind::kHamming, ScaleKind::kJaccard}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown scale kind: " + std::string(name));
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> support,
                                           std::vector<double> mass)
    : support_(std::move(support)), mass_(std::move(mass)) {
  if (support_.empty()) throw std::invalid_argument("distribution needs support");
  if (support_.size() != mass_.size()) {
    throw std::invalid_argument("support and mass lengths differ");
  }
  for (std::size_t i = 1; i < support_.size(); ++i) {
    if (!(support_[i] > support_[i - 1])) {
      throw std::invalid_argument("support must be strictly ascending");
    }
  }
  double total = 0.0;
  for (double m : mass_) {
    if (!(m >= 0.0 && m <= 1.0)) throw std::invalid_argument("mass outside [0,1]");
    total += m;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw std::invalid_argument("masses must sum to 1");
  }
}

DiscreteDistribution DiscreteDistribution::point_mass(double at) {
  return DiscreteDistribution({at}, {1.0});
}

DiscreteDistribution DiscreteDistribution::uniform(std::vector<double> support) {
  const auto n = support.size();
  return DiscreteDistribution(std::move(support),
                              std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

GaussianSummary::GaussianSummary(Eigen::VectorXd mean, Eigen::MatrixXd covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
  const auto n = mean_.size();
  if (n == 0) throw std::invalid_argument("empty mean");
  if (covariance_.rows() != n || covariance_.cols() != n) {
    throw std::invalid_argument("covariance shape does not match mean");
  }
  if ((covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("covariance is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(covariance_,
                                                     Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("covariance is not positive definite");
  }
  chol_.compute(covariance_);
}

double GaussianSummary::distance(std::span<const double> x) const {
  if (static_cast<Eigen::Index>(x.size()) != mean_.size()) {
    throw std::invalid_argument("dimension mismatch");
  }
  const Eigen::VectorXd d =
      Eigen::Map<const Eigen::VectorXd>(x.data(), mean_.size()) - mean_;
  return std::sqrt(d.dot(chol_.solve(d)));
}

double scale_distance(const Scale& scale, std::span<const double> x,
                      std::span<const double> center,
                      const std::optional<Eigen::MatrixXd>& cov) {
  require_same_dim(x, center);
  const auto n = x.size();

  switch (scale.kind) {
    case ScaleKind::kEuclidean: {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += (x[i] - center[i]) * (x[i] - center[i]);
      return std::sqrt(s);
    }
    case ScaleKind::kManhattan: {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += std::abs(x[i] - center[i]);
      return s;
    }
    case ScaleKind::kChebyshev: {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s = std::max(s, std::abs(x[i] - center[i]));
      return s;
    }
    case ScaleKind::kMinkowski: {
      if (!(scale.p > 0.0) || !std::isfinite(scale.p)) {
        throw std::invalid_argument("minkowski p must be finite and positive");
      }
      // Factor out the largest gap so large p does not overflow.
      double big = 0.0;
      for (std::size_t i = 0; i < n; ++i) big = std::max(big, std::abs(x[i] - center[i]));
      if (big == 0.0) return 0.0;
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        s += std::pow(std::abs(x[i] - center[i]) / big, scale.p);
      }
      return big * std::pow(s, 1.0 / scale.p);
    }
    case ScaleKind::kCosine: {
      double dot = 0.0, nx = 0.0, nc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        dot += x[i] * center[i];
        nx += x[i] * x[i];
        nc += center[i] * center[i];
      }
      if (nx == 0.0 || nc == 0.0) {
        throw std::invalid_argument("cosine scale undefined for a zero vector");
      }
      const double cos_sim = std::clamp(dot / (std::sqrt(nx) * std::sqrt(nc)), -1.0, 1.0);
      return 1.0 - cos_sim;
    }
    case ScaleKind::kMahalanobis: {
      if (!cov) throw std::invalid_argument("mahalanobis requires a covariance");
      GaussianSummary g(Eigen::Map<const Eigen::VectorXd>(center.data(),
                                                          static_cast<Eigen::Index>(n)),
                        *cov);
      return g.distance(x);
    }
    case ScaleKind::kHamming: {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        s += ((x[i] >= kBoolThreshold) != (center[i] >= kBoolThreshold)) ? 1.0 : 0.0;
      }
      return s;
    }
    case ScaleKind::kJaccard: {
      std::size_t both = 0, either = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const bool a = x[i] >= kBoolThreshold;
        const bool b = center[i] >= kBoolThreshold;
        both += (a && b) ? 1 : 0;
        either += (a || b) ? 1 : 0;
      }
      if (either == 0) return 0.0;  // two empty sets coincide
      return 1.0 - static_cast<double>(both) / static_cast<double>(either);
    }
  }
  throw std::invalid_argument("unknown scale kind");
}

double divergence(DivergenceKind kind, const DiscreteDistribution& p,
                  const DiscreteDistribution& q) {
  switch (kind) {
    case DivergenceKind::kKl: {
      require_same_support(p, q);
      double s = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p.mass()[i], qi = q.mass()[i];
        if (pi == 0.0) continue;
        if (qi == 0.0) {
          throw std::invalid_argument("kl: p is not absolutely continuous w.r.t. q");
        }
        s += pi * std::log(pi / qi);
      }
      return std::max(0.0, s);
    }
    case DivergenceKind::kPearson: {
      require_same_support(p, q);
      double s = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p.mass()[i], qi = q.mass()[i];
        if (qi == 0.0) {
          if (pi == 0.0) continue;
          throw std::invalid_argument("pearson: q has zero mass where p does not");
        }
        s += (pi - qi) * (pi - qi) / qi;
      }
      return s;
    }
    case DivergenceKind::kWasserstein1d:
      return wasserstein_1d(p, q);
  }
  throw std::invalid_argument("unknown divergence kind");
}

double entropy(const DiscreteDistribution& p) {
  double h = 0.0;
  for (double m : p.mass()) {
    if (m > 0.0) h -= m * std::log(m);
  }
  return h;
}

double fuzzy_event_probability(std::span<const double> membership,
                               const DiscreteDistribution& p) {
  if (membership.size() != p.size()) {
    throw std::invalid_argument("membership length does not match support");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(membership[i] >= 0.0 && membership[i] <= 1.0)) {
      throw std::invalid_argument("membership outside [0,1]");
    }
    s += membership[i] * p.mass()[i];
  }
  return std::clamp(s, 0.0, 1.0);
}

}  // namespace sdl
