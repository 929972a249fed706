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
#include <cmath>
#include <vector>

#include "doctest.h"
#include "sdl/prob.hpp"
#include "sdl/random.hpp"

using namespace sdl;

namespace {

DiscreteDistribution random_distribution(Rng& rng, std::size_t n) {
  std::vector<double> support(n), mass(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    support[i] = static_cast<double>(i);
    mass[i] = rng.uniform(0.05, 1.0);
    total += mass[i];
  }
  for (auto& m : mass) m /= total;
  return DiscreteDistribution(support, mass);
}

DiscreteDistribution random_line_distribution(Rng& rng) {
  const auto n = static_cast<std::size_t>(rng.uniform_int(1, 6));
  std::vector<double> support, mass;
  double x = rng.uniform(-5, 0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x += rng.uniform(0.1, 2.0);
    support.push_back(x);
    mass.push_back(rng.uniform(0.05, 1.0));
    total += mass.back();
  }
  for (auto& m : mass) m /= total;
  return DiscreteDistribution(support, mass);
}

}  // namespace

TEST_CASE("scale_distance examples") {
  const std::vector<double> x{3, 4}, c{0, 0};
  CHECK(scale_distance(Scale::of(ScaleKind::kMahalanobis), x, c, Eigen::MatrixXd::Identity(2, 2)) ==
        doctest::Approx(5.0));
  const std::vector<double> a{1, 5}, b{4, 1};
  CHECK(scale_distance(Scale::of(ScaleKind::kChebyshev), a, b) == 4.0);
  const std::vector<double> h1{1, 0, 1, 0, 1}, h2{1, 0, 0, 1, 1};
  CHECK(scale_distance(Scale::of(ScaleKind::kHamming), h1, h2) == 2.0);
}

TEST_CASE("scale_distance errors") {
  const std::vector<double> a{1, 2}, b{1, 2, 3}, z{0, 0};
  CHECK_THROWS_AS(scale_distance(Scale::euclidean(), a, b), std::invalid_argument);
  CHECK_THROWS_AS(scale_distance(Scale::of(ScaleKind::kCosine), z, a), std::invalid_argument);
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 0, 0, -1;
  CHECK_THROWS_AS(scale_distance(Scale::of(ScaleKind::kMahalanobis), a, a, bad), std::invalid_argument);
  CHECK_THROWS_AS(scale_distance(Scale::of(ScaleKind::kMahalanobis), a, a), std::invalid_argument);
  CHECK_THROWS_AS(Scale::minkowski(0.0), std::invalid_argument);
}

TEST_CASE("self distance is zero for every kind") {
  Rng rng(7);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x(4);
    for (auto& v : x) v = rng.uniform(-3, 3);
    for (auto kind : {ScaleKind::kEuclidean, ScaleKind::kManhattan, ScaleKind::kChebyshev,
                      ScaleKind::kCosine, ScaleKind::kHamming, ScaleKind::kJaccard}) {
      CHECK(scale_distance(Scale::of(kind), x, x) == doctest::Approx(0.0).epsilon(1e-12));
    }
    CHECK(scale_distance(Scale::minkowski(3.0), x, x) == 0.0);
    CHECK(scale_distance(Scale::of(ScaleKind::kMahalanobis), x, x, Eigen::MatrixXd::Identity(4, 4)) ==
          0.0);
  }
}

TEST_CASE("minkowski family limits") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x(5), y(5);
    for (auto& v : x) v = rng.uniform(-1, 1);
    for (auto& v : y) v = rng.uniform(-1, 1);
    CHECK(scale_distance(Scale::minkowski(1.0), x, y) ==
          doctest::Approx(scale_distance(Scale::of(ScaleKind::kManhattan), x, y)));
    CHECK(scale_distance(Scale::minkowski(2.0), x, y) ==
          doctest::Approx(scale_distance(Scale::euclidean(), x, y)));
    std::vector<double> xs(5), ys(5);
    for (int i = 0; i < 5; ++i) {
      xs[i] = x[i] / 2;
      ys[i] = y[i] / 2;
    }
    // Components of xs - ys lie in [-1, 1]; ||d||_inf <= ||d||_64 <= 5^(1/64) ||d||_inf.
    const double cheb = scale_distance(Scale::of(ScaleKind::kChebyshev), xs, ys);
    const double m64 = scale_distance(Scale::minkowski(64.0), xs, ys);
    CHECK(m64 >= cheb - 1e-12);
    CHECK(m64 <= std::pow(5.0, 1.0 / 64.0) * cheb + 1e-12);
    // A single dominant component makes the two agree to 1e-6.
    std::vector<double> spike{0.9, 0.01, -0.01, 0.005, 0.0}, zero(5, 0.0);
    CHECK(std::abs(scale_distance(Scale::minkowski(64.0), spike, zero) - 0.9) < 1e-6);
  }
}

TEST_CASE("cosine range and jaccard") {
  const std::vector<double> a{1, 0}, b{-1, 0}, c{0, 1};
  CHECK(scale_distance(Scale::of(ScaleKind::kCosine), a, b) == doctest::Approx(2.0));
  CHECK(scale_distance(Scale::of(ScaleKind::kCosine), a, c) == doctest::Approx(1.0));
  const std::vector<double> j1{1, 1, 0, 0}, j2{1, 0, 1, 0};
  CHECK(scale_distance(Scale::of(ScaleKind::kJaccard), j1, j2) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("divergence examples") {
  const DiscreteDistribution p({0, 1}, {0.5, 0.5});
  const DiscreteDistribution q({0, 1}, {0.25, 0.75});
  CHECK(divergence(DivergenceKind::kKl, p, p) == 0.0);
  CHECK(divergence(DivergenceKind::kKl, p, q) == doctest::Approx(0.14384103622589046).epsilon(1e-12));
  CHECK(divergence(DivergenceKind::kWasserstein1d, DiscreteDistribution::point_mass(0),
                   DiscreteDistribution::point_mass(1)) == doctest::Approx(1.0));
  CHECK(divergence(DivergenceKind::kPearson, p, p) == 0.0);
}

TEST_CASE("divergence errors") {
  const DiscreteDistribution p({0, 1}, {0.5, 0.5});
  const DiscreteDistribution r({0, 2}, {0.5, 0.5});
  const DiscreteDistribution z({0, 1}, {1.0, 0.0});
  CHECK_THROWS_AS(divergence(DivergenceKind::kKl, p, r), std::invalid_argument);
  CHECK_THROWS_AS(divergence(DivergenceKind::kPearson, p, r), std::invalid_argument);
  CHECK_THROWS_AS(divergence(DivergenceKind::kKl, p, z), std::invalid_argument);
  CHECK_NOTHROW(divergence(DivergenceKind::kWasserstein1d, p, r));
  CHECK_THROWS_AS(DiscreteDistribution({1, 0}, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteDistribution({0, 1}, {0.5, 0.6}), std::invalid_argument);
}

TEST_CASE("entropy examples") {
  CHECK(entropy(DiscreteDistribution::point_mass(3)) == 0.0);
  CHECK(entropy(DiscreteDistribution::uniform({0, 1, 2, 3})) ==
        doctest::Approx(1.3862943611198906).epsilon(1e-12));
  CHECK(entropy(DiscreteDistribution({0, 1, 2}, {0.5, 0.25, 0.25})) ==
        doctest::Approx(1.0397207708399179).epsilon(1e-12));
  CHECK(entropy(DiscreteDistribution({0, 1}, {1.0, 0.0})) == 0.0);
}

TEST_CASE("fuzzy event probability") {
  const DiscreteDistribution p({0, 1, 2}, {0.2, 0.3, 0.5});
  const std::vector<double> all{1, 1, 1}, subset{1, 0, 1}, half{0.5, 0.5};
  CHECK(fuzzy_event_probability(all, p) == doctest::Approx(1.0));
  CHECK(fuzzy_event_probability(subset, p) == doctest::Approx(0.7));
  CHECK(fuzzy_event_probability(half, DiscreteDistribution({0, 1}, {0.5, 0.5})) == 0.5);
  const std::vector<double> short_m{1, 1}, bad{1.5, 0, 0};
  CHECK_THROWS_AS(fuzzy_event_probability(short_m, p), std::invalid_argument);
  CHECK_THROWS_AS(fuzzy_event_probability(bad, p), std::invalid_argument);
}

TEST_CASE("kl is nonnegative and zero only on equal distributions") {
  Rng rng(2026);
  for (int t = 0; t < 1000; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 6));
    const auto p = random_distribution(rng, n);
    const auto q = random_distribution(rng, n);
    const double d = divergence(DivergenceKind::kKl, p, q);
    CHECK(d >= 0.0);
    if (d == 0.0) {
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(p.mass()[i] - q.mass()[i]) < 1e-9);
    }
    CHECK(divergence(DivergenceKind::kKl, p, p) == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_CASE("wasserstein triangle inequality and symmetry") {
  Rng rng(99);
  for (int t = 0; t < 1000; ++t) {
    const auto a = random_line_distribution(rng);
    const auto b = random_line_distribution(rng);
    const auto c = random_line_distribution(rng);
    const double ab = divergence(DivergenceKind::kWasserstein1d, a, b);
    const double ba = divergence(DivergenceKind::kWasserstein1d, b, a);
    const double bc = divergence(DivergenceKind::kWasserstein1d, b, c);
    const double ac = divergence(DivergenceKind::kWasserstein1d, a, c);
    CHECK(ac <= ab + bc + 1e-9);
    CHECK(std::abs(ab - ba) < 1e-12);
  }
}

TEST_CASE("fuzzy event probability is monotone in membership") {
  Rng rng(5);
  for (int t = 0; t < 500; ++t) {
    const auto p = random_distribution(rng, 4);
    std::vector<double> m(4);
    for (auto& v : m) v = rng.uniform();
    const double before = fuzzy_event_probability(m, p);
    const auto i = static_cast<std::size_t>(rng.uniform_int(0, 3));
    m[i] = rng.uniform(m[i], 1.0);
    CHECK(fuzzy_event_probability(m, p) >= before);
  }
}

TEST_CASE("gaussian summary") {
  Eigen::VectorXd mean(2);
  mean << 1, 1;
  Eigen::MatrixXd cov(2, 2);
  cov << 4, 0, 0, 1;
  const GaussianSummary g(mean, cov);
  const std::vector<double> x{3, 1};
  CHECK(g.distance(x) == doctest::Approx(1.0));
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.5, 0, 1;
  CHECK_THROWS_AS(GaussianSummary(mean, asym), std::invalid_argument);
}

TEST_CASE("scale kind names round trip") {
  for (auto k : {ScaleKind::kEuclidean, ScaleKind::kManhattan, ScaleKind::kChebyshev,
                 ScaleKind::kMinkowski, ScaleKind::kCosine, ScaleKind::kMahalanobis,
                 ScaleKind::kHamming, ScaleKind::kJaccard}) {
    CHECK(scale_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(scale_kind_from_string("nope"), std::invalid_argument);
}
