#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "revsim/distribution.hpp"
#include "revsim/rng.hpp"

namespace revsim {

// Set of type indices (0-based, sorted ascending, no duplicates).
using TypeSet = std::vector<int>;

// A pricing problem: d buyer types with ex-ante values theta (sorted
// non-decreasing, the seller-side ordering convention), arrival
// probabilities q, per-type ex-post value distributions whose analytic mean
// equals theta exactly, and a horizon.
struct ProblemInstance {
  int num_types = 0;                             // d
  std::vector<double> theta;                     // ex-ante values in [0,1]
  std::vector<double> q;                         // arrival probabilities, sum 1
  std::vector<ExPostDistribution> value_dists;   // one per type
  long horizon = 0;                              // T

  double q_min() const { return *std::min_element(q.begin(), q.end()); }

  void validate() const {
    if (num_types < 1) throw std::invalid_argument("instance needs at least one type");
    if (horizon < 1) throw std::invalid_argument("horizon must be positive");
    const auto d = static_cast<std::size_t>(num_types);
    if (theta.size() != d || q.size() != d || value_dists.size() != d)
      throw std::invalid_argument("theta/q/value_dists must all have d entries");
    for (std::size_t i = 0; i < d; ++i) {
      if (theta[i] < 0.0 || theta[i] > 1.0)
        throw std::invalid_argument("theta[" + std::to_string(i) + "] outside [0,1]");
      if (i + 1 < d && theta[i] > theta[i + 1])
        throw std::invalid_argument("theta must be sorted non-decreasing");
      if (!(q[i] > 0.0) || q[i] > 1.0)
        throw std::invalid_argument("q[" + std::to_string(i) + "] must lie in (0,1]");
      if (std::abs(value_dists[i].mean() - theta[i]) > 1e-12)
        throw std::invalid_argument("value distribution mean must equal theta[" +
                                    std::to_string(i) + "]");
      if (value_dists[i].support_lo() < 0.0 || value_dists[i].support_hi() > 1.0)
        throw std::invalid_argument("value distribution support must lie in [0,1]");
    }
    const double mass = std::accumulate(q.begin(), q.end(), 0.0);
    if (std::abs(mass - 1.0) > 1e-12)
      throw std::invalid_argument("type probabilities must sum to 1");
  }
};

inline TypeSet all_types(const ProblemInstance& inst) {
  TypeSet s(static_cast<std::size_t>(inst.num_types));
  std::iota(s.begin(), s.end(), 0);
  return s;
}

// Draw a buyer type by inverse CDF over q. One uniform draw per call.
inline int sample_type(const ProblemInstance& inst, std::mt19937_64& rng) {
  const double u = uniform01(rng);
  double cum = 0.0;
  for (int i = 0; i < inst.num_types; ++i) {
    cum += inst.q[static_cast<std::size_t>(i)];
    if (u < cum) return i;
  }
  return inst.num_types - 1;  // guard against rounding in the cumulative sum
}

inline double sample_ex_post(const ProblemInstance& inst, int type, std::mt19937_64& rng) {
  if (type < 0 || type >= inst.num_types)
    throw std::out_of_range("type index out of range");
  return inst.value_dists[static_cast<std::size_t>(type)].sample(rng);
}

// Expected per-round revenue of a posted price restricted to buyers in
// `within`: p * Pr[theta_i >= p and i in within], computed analytically.
inline double expected_revenue(const ProblemInstance& inst, double price,
                               const TypeSet& within) {
  double mass = 0.0;
  for (int i : within) {
    if (inst.theta[static_cast<std::size_t>(i)] >= price)
      mass += inst.q[static_cast<std::size_t>(i)];
  }
  return price * mass;
}

struct PricePick {
  double price = 0.0;
  int type = -1;  // the type whose theta attains the optimum
};

// Revenue-maximizing price over `within`. The maximum of p*Pr[theta>=p] is
// always attained at some theta_i, so only those candidates are evaluated;
// ties break toward the largest price, then the largest type index.
inline PricePick optimal_price(const ProblemInstance& inst, const TypeSet& within) {
  if (within.empty()) throw std::invalid_argument("optimal_price over empty type set");
  PricePick best;
  double best_rev = -1.0;
  for (int i : within) {  // ascending index == non-decreasing theta
    const double p = inst.theta[static_cast<std::size_t>(i)];
    const double r = expected_revenue(inst, p, within);
    if (r >= best_rev) {
      best_rev = r;
      best = {p, i};
    }
  }
  return best;
}

}  // namespace revsim
