#pragma once

#include <cmath>
#include <cstdint>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "revsim/instance.hpp"
#include "revsim/rng.hpp"

namespace revsim {

// Regime threshold q^0_T = T^{-1/3} (d-1)^{-2/3} ln(1/eta)^{1/3}: instances
// with q_min above it sit in the sqrt(T)-regret regime, below it in the
// T^{2/3} regime.
inline double q_regime_threshold(long T, int d, double eta) {
  if (d < 2) throw std::invalid_argument("q_regime_threshold needs d >= 2");
  return std::cbrt(1.0 / static_cast<double>(T)) *
         std::pow(static_cast<double>(d - 1), -2.0 / 3.0) *
         std::cbrt(std::log(1.0 / eta));
}

// Horizon large enough for the hard-instance regret bound to bind
// (constant taken as 1; the analysis states only the order).
inline bool hard_instance_horizon_ok(long T, int d, double eta) {
  const double l = std::log(1.0 / eta);
  const double need = static_cast<double>(d) * l * l *
                      std::pow(std::log(static_cast<double>(d)), 1.5);
  return static_cast<double>(T) >= need;
}

// Worst-case construction: every type shares theta = 1 - 1/sqrt(T) with
// ex-post values Unif(1 - 2/sqrt(T), 1); types 1..d-1 are rare with mass
// q = q^0_T each and type d absorbs the rest. Buyers for this family are
// meant to use the section5 threshold model.
inline ProblemInstance build_hard_instance(long T, int d, double eta) {
  if (d < 2) throw std::invalid_argument("hard instance needs d >= 2");
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0,1)");
  if (T < 1) throw std::invalid_argument("horizon must be positive");

  const double q = q_regime_threshold(T, d, eta);
  const double rare_mass = q * static_cast<double>(d - 1);
  if (!(rare_mass < 1.0))
    throw std::invalid_argument(
        "hard instance infeasible: q(d-1) = " + std::to_string(rare_mass) +
        " >= 1 (increase T or eta, or decrease d)");

  const double root_t = std::sqrt(static_cast<double>(T));
  const double theta = 1.0 - 1.0 / root_t;
  const double lo = 1.0 - 2.0 / root_t;

  ProblemInstance inst;
  inst.num_types = d;
  inst.horizon = T;
  inst.theta.assign(static_cast<std::size_t>(d), theta);
  inst.q.assign(static_cast<std::size_t>(d), q);
  inst.q.back() = 1.0 - rare_mass;
  inst.value_dists.assign(static_cast<std::size_t>(d), ExPostDistribution::uniform(lo, 1.0));
  inst.validate();

  if (!hard_instance_horizon_ok(T, d, eta))
    std::cerr << "warning: hard instance horizon T=" << T
              << " is below d ln(1/eta)^2 ln(d)^{3/2}; the lower-bound regime may not bind\n";
  return inst;
}

// Near-uniform instance with min type mass exactly q_min_target, ex-ante
// values spaced at least theta_gap apart, and Bernoulli ex-post noise (the
// highest-variance choice at a fixed mean).
inline ProblemInstance build_easy_instance(int d, double q_min_target, double theta_gap,
                                           std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("easy instance needs d >= 1");
  if (!(q_min_target > 0.0) || q_min_target * d > 1.0 + 1e-12)
    throw std::invalid_argument("easy instance: need 0 < q_min_target <= 1/d");
  if (theta_gap < 0.0 || theta_gap * d > 1.0)
    throw std::invalid_argument("easy instance: need 0 <= theta_gap <= 1/d");

  std::mt19937_64 rng(mix64(seed));

  ProblemInstance inst;
  inst.num_types = d;
  inst.horizon = 1;  // caller sets the horizon
  inst.q.assign(static_cast<std::size_t>(d), 0.0);
  if (d == 1) {
    inst.q[0] = 1.0;
  } else {
    // One type carries exactly q_min_target, the rest split the remainder;
    // the last non-rare entry absorbs any rounding so the total is exactly 1.
    const auto rare = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(d));
    const double rest = (1.0 - q_min_target) / static_cast<double>(d - 1);
    for (auto& qi : inst.q) qi = rest;
    inst.q[rare] = q_min_target;
    const std::size_t adjust = rare == inst.q.size() - 1 ? inst.q.size() - 2 : inst.q.size() - 1;
    double others = 0.0;
    for (std::size_t j = 0; j < inst.q.size(); ++j)
      if (j != adjust) others += inst.q[j];
    inst.q[adjust] = 1.0 - others;
  }

  // Evenly gap-spaced thetas with a seeded start inside the feasible range.
  const double span = theta_gap * static_cast<double>(d - 1);
  const double start = (1.0 - span) * (0.1 + 0.8 * uniform01(rng));
  inst.theta.resize(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i)
    inst.theta[static_cast<std::size_t>(i)] = start + theta_gap * static_cast<double>(i);

  for (double th : inst.theta) inst.value_dists.push_back(ExPostDistribution::bernoulli(th));
  inst.validate();
  return inst;
}

// Randomized instance for fuzzing: sorted uniform thetas, positive random
// masses, mixed distribution kinds.
inline ProblemInstance build_random_instance(int d, std::uint64_t seed, long horizon = 1000) {
  if (d < 1) throw std::invalid_argument("random instance needs d >= 1");
  std::mt19937_64 rng(mix64(seed ^ 0x5EEDF00DULL));

  ProblemInstance inst;
  inst.num_types = d;
  inst.horizon = horizon;
  inst.theta.resize(static_cast<std::size_t>(d));
  for (auto& th : inst.theta) th = uniform01(rng);
  std::sort(inst.theta.begin(), inst.theta.end());

  inst.q.resize(static_cast<std::size_t>(d));
  double total = 0.0;
  for (auto& qi : inst.q) {
    qi = 0.05 + uniform01(rng);
    total += qi;
  }
  for (auto& qi : inst.q) qi /= total;
  // Rounding of the normalized masses can leave the sum a few ulp off 1.
  double others = 0.0;
  for (std::size_t i = 0; i + 1 < inst.q.size(); ++i) others += inst.q[i];
  inst.q.back() = 1.0 - others;

  for (double th : inst.theta) {
    switch (rng() % 3) {
      case 0:
        inst.value_dists.push_back(ExPostDistribution::bernoulli(th));
        break;
      case 1:
        inst.value_dists.push_back(ExPostDistribution::point(th));
        break;
      default: {
        const double w = uniform01(rng) * std::min(th, 1.0 - th);
        inst.value_dists.push_back(ExPostDistribution::uniform(th - w, th + w));
        break;
      }
    }
  }
  inst.validate();
  return inst;
}

// Instance family selector used by experiment configs. Horizons come from
// the sweep, so resolution takes the target T.
struct InstanceSpec {
  enum class Family { kHard, kEasy, kRandom, kExplicit };

  Family family = Family::kHard;
  int d = 3;
  double eta = 0.1;          // hard
  double q_min = 0.25;       // easy
  double gap = 0.25;         // easy
  std::uint64_t seed = 0;    // easy / random
  ProblemInstance explicit_instance;  // kExplicit

  ProblemInstance resolve(long T) const {
    ProblemInstance inst;
    switch (family) {
      case Family::kHard:
        return build_hard_instance(T, d, eta);
      case Family::kEasy:
        inst = build_easy_instance(d, q_min, gap, seed);
        break;
      case Family::kRandom:
        inst = build_random_instance(d, seed);
        break;
      case Family::kExplicit:
        inst = explicit_instance;
        break;
    }
    inst.horizon = T;
    inst.validate();
    return inst;
  }

  std::string family_name() const {
    switch (family) {
      case Family::kHard: return "hard";
      case Family::kEasy: return "easy";
      case Family::kRandom: return "random";
      case Family::kExplicit: return "explicit";
    }
    return "?";
  }
};

}  // namespace revsim
