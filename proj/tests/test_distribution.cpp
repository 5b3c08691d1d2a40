#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "revsim/distribution.hpp"

using namespace revsim;
using Catch::Matchers::WithinAbs;

TEST_CASE("analytic means") {
  CHECK(ExPostDistribution::bernoulli(0.6).mean() == 0.6);
  CHECK(ExPostDistribution::point(0.7).mean() == 0.7);
  CHECK_THAT(ExPostDistribution::uniform(0.98, 1.0).mean(), WithinAbs(0.99, 1e-15));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ExPostDistribution::bernoulli(1.2), std::invalid_argument);
  CHECK_THROWS_AS(ExPostDistribution::point(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(ExPostDistribution::uniform(0.5, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(ExPostDistribution::uniform(-0.1, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(ExPostDistribution::uniform(0.5, 1.1), std::invalid_argument);
}

TEST_CASE("point mass always returns its value") {
  const auto dist = ExPostDistribution::point(0.7);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) CHECK(dist.sample(rng) == 0.7);
}

TEST_CASE("uniform(0.98, 1.0) draws stay in support") {
  // The narrow band used by the worst-case construction at T = 10^4.
  const auto dist = ExPostDistribution::uniform(0.98, 1.0);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100000; ++i) {
    const double v = dist.sample(rng);
    REQUIRE(v >= 0.98);
    REQUIRE(v <= 1.0);
  }
}

TEST_CASE("bernoulli empirical mean concentrates (4-sigma band)") {
  const auto dist = ExPostDistribution::bernoulli(0.6);
  std::mt19937_64 rng(3);
  const int n = 1000000;
  long ones = 0;
  for (int i = 0; i < n; ++i) ones += dist.sample(rng) == 1.0 ? 1 : 0;
  const double mean = static_cast<double>(ones) / n;
  // 4 * sqrt(0.6*0.4/1e6) ~= 0.00196 < 0.002
  CHECK_THAT(mean, WithinAbs(0.6, 0.002));
}
