#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "revsim/buyer.hpp"
#include "revsim/csv.hpp"
#include "revsim/instance.hpp"
#include "revsim/review_log.hpp"
#include "revsim/rng.hpp"
#include "revsim/seller.hpp"

namespace revsim {

struct RoundRecord {
  long t = 0;
  double price = 0.0;
  int type = -1;           // arriving buyer's type (ground truth, 0-based)
  double threshold = 0.0;  // the buyer's tau
  bool bought = false;
  double revenue = 0.0;    // price * bought
  std::optional<double> review;  // present iff bought
};

struct RunTrace {
  std::uint64_t seed = 0;
  long horizon = 0;
  std::vector<RoundRecord> rounds;  // empty when rounds are not recorded
  double total_revenue = 0.0;
  double benchmark_per_round = 0.0;  // p* Pr[theta_i >= p*]
  double regret = 0.0;               // horizon * benchmark_per_round - total_revenue
};

// Analytic per-round benchmark: revenue of the optimal fixed price when
// buyers purchase whenever their ex-ante value covers it.
inline double benchmark_per_round(const ProblemInstance& inst) {
  const TypeSet all = all_types(inst);
  return expected_revenue(inst, optimal_price(inst, all).price, all);
}

// Regret of a finished trace against the analytic benchmark. May be
// negative on lucky realizations; never clamped.
inline double episode_regret(const RunTrace& trace, const ProblemInstance& inst) {
  return static_cast<double>(trace.horizon) * benchmark_per_round(inst) - trace.total_revenue;
}

struct RoundView {
  const RoundRecord& round;
  const SellerPolicy& policy;
};

struct EpisodeOptions {
  bool record_rounds = true;
  // Called at the end of every round, after the policy's own update.
  std::function<void(const RoundView&)> observer;
};

// One full episode of the round protocol: the seller posts a price off the
// public review log, a buyer type arrives, thresholds its own type's past
// reviews, and buys iff the price is covered; purchases append a review and
// reveal the type to the seller. Deterministic per seed.
inline RunTrace run_episode(const ProblemInstance& inst, SellerPolicy& policy,
                            const BuyerModel& buyer, std::uint64_t seed,
                            const EpisodeOptions& opts = {}) {
  inst.validate();
  EpisodeStreams streams(seed);
  ReviewLog log(inst.num_types);

  RunTrace trace;
  trace.seed = seed;
  trace.horizon = inst.horizon;
  trace.benchmark_per_round = benchmark_per_round(inst);
  if (opts.record_rounds) trace.rounds.reserve(static_cast<std::size_t>(inst.horizon));

  for (long t = 1; t <= inst.horizon; ++t) {
    RoundRecord rec;
    rec.t = t;
    rec.price = policy.choose_price(t, log);

    rec.type = sample_type(inst, streams.type_rng);
    // The buyer sees only its own type's reviews and the round index.
    rec.threshold = buyer_threshold(buyer, log.count(rec.type), log.sum(rec.type), t,
                                    inst.theta[static_cast<std::size_t>(rec.type)]);
    rec.bought = decide_purchase(rec.threshold, rec.price);

    if (rec.bought) {
      const double v = sample_ex_post(inst, rec.type, streams.value_rng);
      log.append(rec.type, v);
      rec.review = v;
      rec.revenue = rec.price;
      trace.total_revenue += rec.price;
      policy.observe(t, rec.price, true, rec.type);
    } else {
      policy.observe(t, rec.price, false, std::nullopt);
    }

    if (opts.observer) opts.observer(RoundView{rec, policy});
    if (opts.record_rounds) trace.rounds.push_back(rec);
  }

  trace.regret = episode_regret(trace, inst);
  return trace;
}

// Trace export: t,price,type,threshold,bought,revenue,review. Types are
// 1-based in files; the review field is empty on rounds without a purchase.
inline void write_trace_csv(std::ostream& os, const RunTrace& trace) {
  os << "t,price,type,threshold,bought,revenue,review\n";
  for (const RoundRecord& r : trace.rounds) {
    os << r.t << ',' << csv::fmt(r.price) << ',' << (r.type + 1) << ','
       << csv::fmt(r.threshold) << ',' << (r.bought ? 1 : 0) << ',' << csv::fmt(r.revenue)
       << ',';
    if (r.review) os << csv::fmt(*r.review);
    os << '\n';
  }
}

struct EpisodeSummary {
  std::uint64_t seed = 0;
  double total_revenue = 0.0;
  double regret = 0.0;
};

inline void write_episode_summary_csv(std::ostream& os, std::span<const EpisodeSummary> rows) {
  os << "seed,total_revenue,regret\n";
  for (const EpisodeSummary& r : rows)
    os << r.seed << ',' << csv::fmt(r.total_revenue) << ',' << csv::fmt(r.regret) << '\n';
}

}  // namespace revsim
