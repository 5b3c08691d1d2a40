#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "revsim/buyer.hpp"
#include "revsim/instance.hpp"
#include "revsim/review_log.hpp"

namespace revsim {

// A posted-price policy. Each round the engine asks for a price given the
// public review log, then reports the outcome. A purchase reveals the buyer's
// type (through the review); a pass reveals nothing about it.
class SellerPolicy {
 public:
  virtual ~SellerPolicy() = default;

  virtual double choose_price(long t, const ReviewLog& reviews) = 0;

  // bought_type must be present iff bought.
  virtual void observe(long t, double price, bool bought, std::optional<int> bought_type) = 0;

  virtual std::string name() const = 0;
};

class FixedPricePolicy final : public SellerPolicy {
 public:
  explicit FixedPricePolicy(double price) : price_(price) {
    if (price < 0.0 || price > 1.0)
      throw std::invalid_argument("fixed price must lie in [0,1]");
  }

  double choose_price(long, const ReviewLog&) override { return price_; }
  void observe(long, double, bool, std::optional<int>) override {}
  std::string name() const override { return "fixed:" + std::to_string(price_); }

  double price() const { return price_; }

 private:
  double price_;
};

// Posts the benchmark price p*([d]) every round. Paired with omniscient
// buyers it realizes the regret benchmark empirically.
class OraclePolicy final : public SellerPolicy {
 public:
  explicit OraclePolicy(const ProblemInstance& inst)
      : price_(optimal_price(inst, all_types(inst)).price) {}

  double choose_price(long, const ReviewLog&) override { return price_; }
  void observe(long, double, bool, std::optional<int>) override {}
  std::string name() const override { return "oracle"; }

 private:
  double price_;
};

struct TwoPhaseParams {
  double lambda = 0.0;            // elimination threshold; <=0 selects d^{-2/3} T^{-1/3}
  double phase1_constant = 32.0;  // c in t_lambda = ceil(c ln(d T^2) / lambda) + 1
  double eta = 0.1;               // pessimism level the buyers are assumed to satisfy
};

inline double auto_lambda(int d, long T) {
  return std::pow(static_cast<double>(d), -2.0 / 3.0) *
         std::pow(static_cast<double>(T), -1.0 / 3.0);
}

// Length of the free-price phase: ceil(c ln(d T^2) / lambda) + 1, capped at
// the horizon so short runs stay well defined.
inline long phase1_length(int d, long T, double lambda, double phase1_constant) {
  if (d < 1 || T < 1) throw std::invalid_argument("phase1_length: d and T must be positive");
  if (!(lambda > 0.0) || lambda > 1.0)
    throw std::invalid_argument("phase1_length: lambda must lie in (0,1]");
  if (phase1_constant < 0.0)
    throw std::invalid_argument("phase1_length: constant must be >= 0");
  const double log_dT2 =
      std::log(static_cast<double>(d)) + 2.0 * std::log(static_cast<double>(T));
  const double value = phase1_constant * log_dT2 / lambda;
  if (!(value < static_cast<double>(T)))  // also catches overflow/inf
    return T;
  return std::min(T, static_cast<long>(std::ceil(value)) + 1);
}

// Types that appeared in at least a (3 lambda / 4)-fraction of phase-1
// rounds, boundary inclusive. Compared as 4*count >= 3*lambda*t_lambda to
// keep exact boundaries exact.
inline TypeSet retained_types(std::span<const long> phase1_counts, long t_lambda,
                              double lambda) {
  TypeSet kept;
  const double threshold = 3.0 * (lambda * static_cast<double>(t_lambda));
  for (int i = 0; i < static_cast<int>(phase1_counts.size()); ++i) {
    if (4.0 * static_cast<double>(phase1_counts[static_cast<std::size_t>(i)]) >= threshold)
      kept.push_back(i);
  }
  return kept;
}

// Largest price guaranteed to sell to every active type: the smallest
// theta_i or seller-side review bound of any i in `active`. The seller bound
// is the buyer bound evaluated at round T, which never exceeds any
// eta-pessimistic buyer's threshold on the same reviews. Empty active set
// falls back to posting 1.
inline double two_phase_price(const ProblemInstance& inst, std::span<const int> active,
                              const ReviewLog& reviews, double eta) {
  if (active.empty()) return 1.0;
  double price = 1.0;
  for (int i : active) {
    const double lb = review_lower_bound(reviews.count(i), reviews.sum(i), inst.horizon, eta);
    price = std::min(price, std::min(inst.theta[static_cast<std::size_t>(i)], lb));
  }
  return price;
}

// Position in `active` of the first type whose upper revenue bound reaches
// the best lower bound; everything before it gets eliminated. mu_bar holds
// the revenue estimates for the active types, in order.
inline std::size_t elimination_cut(std::span<const double> mu_bar, double rho) {
  double best_check = -1.0;
  for (double m : mu_bar) best_check = std::max(best_check, m - rho);
  for (std::size_t k = 0; k < mu_bar.size(); ++k) {
    if (mu_bar[k] + rho >= best_check) return k;
  }
  return 0;  // unreachable: the maximizer always qualifies
}

// Two-phase successive-elimination pricing. Phase 1 posts price 0 for
// t_lambda rounds to sample the type distribution; types below the
// appearance threshold are dropped, giving the targeted set Q. Phase 2
// prices low enough that every still-active type is guaranteed to buy, while
// confidence bounds on per-type revenue successively eliminate active types
// whose theta is too low to be the optimal price over Q.
class TwoPhasePolicy final : public SellerPolicy {
 public:
  TwoPhasePolicy(const ProblemInstance& inst, TwoPhaseParams params)
      : inst_(&inst), params_(params) {
    if (!(params_.eta > 0.0 && params_.eta < 1.0))
      throw std::invalid_argument("two_phase: eta must lie in (0,1)");
    lambda_ = params_.lambda > 0.0 ? params_.lambda : auto_lambda(inst.num_types, inst.horizon);
    if (lambda_ > 1.0) lambda_ = 1.0;
    t_lambda_ = phase1_length(inst.num_types, inst.horizon, lambda_, params_.phase1_constant);
    phase1_counts_.assign(static_cast<std::size_t>(inst.num_types), 0);
    phase2_hits_.assign(static_cast<std::size_t>(inst.num_types), 0);
    in_q_.assign(static_cast<std::size_t>(inst.num_types), 0);
  }

  double choose_price(long t, const ReviewLog& reviews) override {
    if (t <= t_lambda_) {
      cut_at_pricing_ = 0;
      return 0.0;
    }
    cut_at_pricing_ = cut_;
    return two_phase_price(*inst_, active_span(), reviews, params_.eta);
  }

  void observe(long t, double /*price*/, bool bought, std::optional<int> bought_type) override {
    if (bought && !bought_type)
      throw std::invalid_argument("two_phase: purchase reported without a type");
    if (bought_type && (*bought_type < 0 || *bought_type >= inst_->num_types))
      throw std::out_of_range("two_phase: reported type out of range");
    if (t <= t_lambda_) {
      if (bought) ++phase1_counts_[static_cast<std::size_t>(*bought_type)];
      if (t == t_lambda_) finish_phase1();
      return;
    }
    ++phase2_rounds_;
    if (bought && in_q_[static_cast<std::size_t>(*bought_type)]) {
      const double theta_b = inst_->theta[static_cast<std::size_t>(*bought_type)];
      for (int i = 0; i < inst_->num_types; ++i) {
        if (theta_b >= inst_->theta[static_cast<std::size_t>(i)])
          ++phase2_hits_[static_cast<std::size_t>(i)];
      }
    }
    rho_ = std::sqrt((std::log(static_cast<double>(inst_->num_types)) +
                      2.0 * std::log(static_cast<double>(inst_->horizon))) /
                     (2.0 * static_cast<double>(phase2_rounds_)));
    if (cut_ < q_.size()) {
      mu_bar_.clear();
      for (std::size_t k = cut_; k < q_.size(); ++k)
        mu_bar_.push_back(revenue_estimate(q_[k]));
      cut_ += elimination_cut(mu_bar_, rho_);
    }
  }

  std::string name() const override { return "two_phase"; }

  // --- introspection -------------------------------------------------------

  long t_lambda() const { return t_lambda_; }
  double lambda() const { return lambda_; }
  double eta() const { return params_.eta; }
  bool phase1_done() const { return phase1_done_; }
  const TypeSet& retained() const { return q_; }               // Q
  TypeSet active_set() const {                                 // S, current
    return TypeSet(q_.begin() + static_cast<std::ptrdiff_t>(cut_), q_.end());
  }
  // S as it stood when the last price was chosen (the set the round targeted).
  TypeSet active_set_at_pricing() const {
    return TypeSet(q_.begin() + static_cast<std::ptrdiff_t>(cut_at_pricing_), q_.end());
  }
  long phase2_rounds() const { return phase2_rounds_; }
  double rho() const { return rho_; }
  // Revenue estimate mu_bar for one type (valid once phase 2 has rounds).
  double revenue_estimate(int type) const {
    return inst_->theta[static_cast<std::size_t>(type)] *
           static_cast<double>(phase2_hits_[static_cast<std::size_t>(type)]) /
           static_cast<double>(phase2_rounds_);
  }

 private:
  std::span<const int> active_span() const {
    return std::span<const int>(q_).subspan(cut_);
  }

  void finish_phase1() {
    q_ = retained_types(phase1_counts_, t_lambda_, lambda_);
    for (int i : q_) in_q_[static_cast<std::size_t>(i)] = 1;
    cut_ = 0;
    phase1_done_ = true;
  }

  const ProblemInstance* inst_;
  TwoPhaseParams params_;
  double lambda_ = 0.0;
  long t_lambda_ = 0;
  bool phase1_done_ = false;

  std::vector<long> phase1_counts_;
  TypeSet q_;                     // retained types, frozen after phase 1
  std::vector<char> in_q_;
  std::size_t cut_ = 0;           // S = q_[cut_..]
  std::size_t cut_at_pricing_ = 0;
  std::vector<long> phase2_hits_; // rounds s with b_s=1, theta_{i_s} >= theta_i, i_s in Q
  long phase2_rounds_ = 0;
  double rho_ = 0.0;
  std::vector<double> mu_bar_;    // scratch, active types only
};

// Policy factory for config strings:
//   "two_phase" | "fixed:<p>" | "oracle".
inline std::unique_ptr<SellerPolicy> make_policy(std::string_view text,
                                                 const ProblemInstance& inst,
                                                 const TwoPhaseParams& params) {
  if (text == "two_phase")
    return std::make_unique<TwoPhasePolicy>(inst, params);
  if (text == "oracle")
    return std::make_unique<OraclePolicy>(inst);
  if (text.starts_with("fixed:"))
    return std::make_unique<FixedPricePolicy>(std::stod(std::string(text.substr(6))));
  throw std::invalid_argument("unknown seller policy: " + std::string(text));
}

}  // namespace revsim
