#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <utility>
#include <vector>

#include "revsim/regression.hpp"
#include "revsim/rng.hpp"

using namespace revsim;
using Catch::Matchers::WithinAbs;

TEST_CASE("exact power laws recover their exponent") {
  std::vector<std::pair<double, double>> pts;
  for (double T : {1e3, 1e4, 1e5}) pts.emplace_back(T, 3.0 * std::pow(T, 2.0 / 3.0));
  const PowerLawFit fit = fit_scaling_exponent(pts);
  CHECK_THAT(fit.slope, WithinAbs(2.0 / 3.0, 1e-9));
  CHECK_THAT(fit.intercept, WithinAbs(std::log(3.0), 1e-9));
  CHECK(fit.n_points == 3);
  CHECK(fit.n_dropped == 0);
}

TEST_CASE("linear data has slope one") {
  const std::vector<std::pair<double, double>> pts = {{10.0, 10.0}, {100.0, 100.0}};
  CHECK_THAT(fit_scaling_exponent(pts).slope, WithinAbs(1.0, 1e-12));
}

TEST_CASE("noisy sqrt scaling lands near one half") {
  std::mt19937_64 rng(321);
  std::vector<std::pair<double, double>> pts;
  for (double T : {1e3, 3e3, 1e4, 3e4, 1e5, 3e5}) {
    const double noise = 1.0 + 0.05 * (2.0 * uniform01(rng) - 1.0);
    pts.emplace_back(T, std::sqrt(T) * noise);
  }
  const double slope = fit_scaling_exponent(pts).slope;
  CHECK(slope >= 0.40);
  CHECK(slope <= 0.60);
}

TEST_CASE("positive rescaling shifts only the intercept") {
  std::mt19937_64 rng(654);
  std::vector<std::pair<double, double>> pts, scaled;
  for (double T : {1e2, 1e3, 1e4, 1e5}) {
    const double y = std::pow(T, 0.61) * (0.9 + 0.2 * uniform01(rng));
    pts.emplace_back(T, y);
    scaled.emplace_back(T, 7.5 * y);
  }
  const PowerLawFit base = fit_scaling_exponent(pts);
  const PowerLawFit up = fit_scaling_exponent(scaled);
  CHECK_THAT(up.slope, WithinAbs(base.slope, 1e-12));
  CHECK_THAT(up.intercept, WithinAbs(base.intercept + std::log(7.5), 1e-9));
}

TEST_CASE("nonpositive values are dropped; too few points is an error") {
  const std::vector<std::pair<double, double>> pts = {
      {10.0, -5.0}, {100.0, 100.0}, {1000.0, 1000.0}, {10000.0, 0.0}};
  const PowerLawFit fit = fit_scaling_exponent(pts);
  CHECK(fit.n_points == 2);
  CHECK(fit.n_dropped == 2);
  CHECK_THAT(fit.slope, WithinAbs(1.0, 1e-12));

  const std::vector<std::pair<double, double>> bad = {{10.0, -1.0}, {100.0, 5.0}};
  CHECK_THROWS_AS(fit_scaling_exponent(bad), std::invalid_argument);
}
