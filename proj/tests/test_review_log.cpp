#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "revsim/review_log.hpp"
#include "revsim/rng.hpp"

using namespace revsim;

TEST_CASE("per-type stats match a from-scratch recomputation") {
  std::mt19937_64 rng(11);
  ReviewLog log(5);
  for (int step = 0; step < 2000; ++step) {
    log.append(static_cast<int>(rng() % 5), uniform01(rng));
  }

  std::vector<std::size_t> counts(5, 0);
  std::vector<double> sums(5, 0.0);
  for (const auto& [type, value] : log.entries()) {
    counts[static_cast<std::size_t>(type)]++;
    sums[static_cast<std::size_t>(type)] += value;
  }
  for (int i = 0; i < 5; ++i) {
    CHECK(log.count(i) == counts[static_cast<std::size_t>(i)]);
    CHECK(std::abs(log.sum(i) - sums[static_cast<std::size_t>(i)]) <= 1e-9);
    CHECK(log.values_of(i).size() == counts[static_cast<std::size_t>(i)]);
  }
  CHECK(log.size() == 2000);
}

TEST_CASE("type bounds are enforced") {
  ReviewLog log(2);
  CHECK_THROWS_AS(log.append(2, 0.5), std::out_of_range);
  CHECK_THROWS_AS(log.append(-1, 0.5), std::out_of_range);
  CHECK_THROWS_AS(log.count(7), std::out_of_range);
}
