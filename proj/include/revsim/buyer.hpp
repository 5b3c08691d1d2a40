#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace revsim {

// Hoeffding lower confidence bound a buyer places on its own ex-ante value
// from n same-type reviews summing to `sum`, observed on the given round:
//
//   0                                          if n == 0
//   max{0, mean - sqrt(ln(round/eta) / (2n))}  otherwise.
//
// The ln(round) factor keeps the bound valid under arbitrary seller policies,
// where review counts are not independent of the data.
inline double review_lower_bound(std::size_t n, double sum, long round, double eta) {
  if (n == 0) return 0.0;
  const double mean = sum / static_cast<double>(n);
  const double conf =
      std::sqrt(std::log(static_cast<double>(round) / eta) / (2.0 * static_cast<double>(n)));
  return std::max(0.0, mean - conf);
}

inline double review_lower_bound(std::span<const double> reviews, long round, double eta) {
  double sum = 0.0;
  for (double v : reviews) sum += v;
  return review_lower_bound(reviews.size(), sum, round, eta);
}

// Purchase-threshold models. Every kind is eta-pessimistic: its threshold
// dominates review_lower_bound pointwise (omniscient uses the true ex-ante
// value, the benchmark behavior).
//
//   exact_lb     tau = review_lower_bound(...)            worst case for the seller
//   lb_plus_slack tau = min{1, lb + slack}                ablation
//   omniscient   tau = theta of the arriving type          benchmark buyers
//   section5     tau = max{0, mean - sqrt(ln(1/eta)/(2n))} round-independent bound
struct BuyerModel {
  enum class Kind { kExactLb, kLbPlusSlack, kOmniscient, kSection5 };

  Kind kind = Kind::kExactLb;
  double eta = 0.1;
  double slack = 0.0;

  // Accepts "exact_lb" | "lb_plus_slack:<slack>" | "omniscient" | "section5".
  static BuyerModel parse(std::string_view text, double eta) {
    if (!(eta > 0.0 && eta < 1.0))
      throw std::invalid_argument("buyer eta must lie in (0,1)");
    BuyerModel m;
    m.eta = eta;
    if (text == "exact_lb") {
      m.kind = Kind::kExactLb;
    } else if (text == "omniscient") {
      m.kind = Kind::kOmniscient;
    } else if (text == "section5") {
      m.kind = Kind::kSection5;
    } else if (text.starts_with("lb_plus_slack:")) {
      m.kind = Kind::kLbPlusSlack;
      m.slack = std::stod(std::string(text.substr(14)));
      if (m.slack < 0.0) throw std::invalid_argument("slack must be >= 0");
    } else {
      throw std::invalid_argument("unknown buyer model: " + std::string(text));
    }
    return m;
  }

  std::string name() const {
    switch (kind) {
      case Kind::kExactLb: return "exact_lb";
      case Kind::kLbPlusSlack: return "lb_plus_slack:" + std::to_string(slack);
      case Kind::kOmniscient: return "omniscient";
      case Kind::kSection5: return "section5";
    }
    return "?";
  }
};

// Threshold the arriving buyer compares against the posted price. Inputs are
// deliberately restricted to what the protocol reveals: the buyer's own-type
// review statistics and the round index. true_theta is consulted only by the
// omniscient kind.
inline double buyer_threshold(const BuyerModel& model, std::size_t n_reviews,
                              double sum_reviews, long round, double true_theta) {
  switch (model.kind) {
    case BuyerModel::Kind::kExactLb:
      return review_lower_bound(n_reviews, sum_reviews, round, model.eta);
    case BuyerModel::Kind::kLbPlusSlack:
      return std::min(1.0, review_lower_bound(n_reviews, sum_reviews, round, model.eta) +
                               model.slack);
    case BuyerModel::Kind::kOmniscient:
      return true_theta;
    case BuyerModel::Kind::kSection5: {
      if (n_reviews == 0) return 0.0;
      const double mean = sum_reviews / static_cast<double>(n_reviews);
      const double conf =
          std::sqrt(std::log(1.0 / model.eta) / (2.0 * static_cast<double>(n_reviews)));
      return std::max(0.0, mean - conf);
    }
  }
  return 0.0;
}

// Purchase iff the price does not exceed the threshold (boundary inclusive).
inline bool decide_purchase(double threshold, double price) { return price <= threshold; }

}  // namespace revsim
