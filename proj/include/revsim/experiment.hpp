#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "revsim/config.hpp"
#include "revsim/csv.hpp"
#include "revsim/engine.hpp"
#include "revsim/generators.hpp"
#include "revsim/regression.hpp"
#include "revsim/rng.hpp"

namespace revsim {

struct CellResult {
  std::string policy;
  long horizon = 0;
  std::vector<EpisodeSummary> episodes;  // ordered by replicate index
  double mean_regret = 0.0;
  double std_err = 0.0;  // sample std / sqrt(R); 0 when R == 1
};

struct SweepResult {
  std::vector<CellResult> cells;  // config order: policy-major, horizon-minor
  std::vector<std::pair<std::string, PowerLawFit>> exponents;
};

namespace detail {

// Run `total` independent tasks on `threads` workers. Each task writes only
// its own output slot, so results do not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t total, int threads, Fn&& fn) {
  if (threads <= 1 || total <= 1) {
    for (std::size_t i = 0; i < total; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  const int n = std::min<int>(threads, static_cast<int>(total));
  pool.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

inline void finish_cell(CellResult& cell) {
  double sum = 0.0;
  for (const auto& e : cell.episodes) sum += e.regret;
  const auto r = static_cast<double>(cell.episodes.size());
  cell.mean_regret = sum / r;
  if (cell.episodes.size() > 1) {
    double ss = 0.0;
    for (const auto& e : cell.episodes) {
      const double dev = e.regret - cell.mean_regret;
      ss += dev * dev;
    }
    cell.std_err = std::sqrt(ss / (r - 1.0)) / std::sqrt(r);
  }
}

}  // namespace detail

// Seeded replicate sweep over (policy, horizon). Episode seeds derive from
// (base_seed, policy, T, replicate), so the result is independent of thread
// count and execution order.
inline SweepResult compute_sweep(const ExperimentConfig& cfg, int threads = 1) {
  cfg.validate();
  const BuyerModel buyer = BuyerModel::parse(cfg.buyer, cfg.eta);

  struct Task {
    std::size_t cell;
    int replicate;
    std::uint64_t seed;
  };

  SweepResult result;
  std::vector<Task> tasks;
  std::vector<ProblemInstance> cell_instances;
  for (const auto& policy : cfg.policies) {
    for (long T : cfg.horizons) {
      CellResult cell;
      cell.policy = policy;
      cell.horizon = T;
      cell.episodes.resize(static_cast<std::size_t>(cfg.replicates));
      const std::size_t idx = result.cells.size();
      for (int r = 0; r < cfg.replicates; ++r)
        tasks.push_back({idx, r, episode_seed(cfg.base_seed, policy, static_cast<std::uint64_t>(T),
                                              static_cast<std::uint64_t>(r))});
      result.cells.push_back(std::move(cell));
      cell_instances.push_back(cfg.instance.resolve(T));
    }
  }

  EpisodeOptions light;
  light.record_rounds = false;
  detail::parallel_for(tasks.size(), threads, [&](std::size_t k) {
    const Task& task = tasks[k];
    CellResult& cell = result.cells[task.cell];
    const ProblemInstance& inst = cell_instances[task.cell];
    auto policy = make_policy(cell.policy, inst, cfg.two_phase_params());
    const RunTrace trace = run_episode(inst, *policy, buyer, task.seed, light);
    cell.episodes[static_cast<std::size_t>(task.replicate)] =
        EpisodeSummary{task.seed, trace.total_revenue, trace.regret};
  });

  for (auto& cell : result.cells) detail::finish_cell(cell);

  if (cfg.horizons.size() >= 2) {
    for (const auto& policy : cfg.policies) {
      std::vector<std::pair<double, double>> points;
      for (const auto& cell : result.cells)
        if (cell.policy == policy)
          points.emplace_back(static_cast<double>(cell.horizon), cell.mean_regret);
      try {
        result.exponents.emplace_back(policy, fit_scaling_exponent(points));
      } catch (const std::invalid_argument&) {
        // fewer than two positive mean regrets: no exponent for this policy
      }
    }
  }
  return result;
}

// ---- CSV emission ----------------------------------------------------------

inline void write_summary_csv(std::ostream& os, const SweepResult& result) {
  os << "policy,T,replicates,mean_regret,std_err\n";
  for (const auto& cell : result.cells)
    os << cell.policy << ',' << cell.horizon << ',' << cell.episodes.size() << ','
       << csv::fmt(cell.mean_regret) << ',' << csv::fmt(cell.std_err) << '\n';
}

inline void write_exponent_csv(std::ostream& os, const SweepResult& result) {
  os << "policy,slope,intercept,n_points\n";
  for (const auto& [policy, fit] : result.exponents)
    os << policy << ',' << csv::fmt(fit.slope) << ',' << csv::fmt(fit.intercept) << ','
       << fit.n_points << '\n';
}

inline void write_episodes_csv(std::ostream& os, const SweepResult& result) {
  os << "policy,T,replicate,seed,total_revenue,regret\n";
  for (const auto& cell : result.cells)
    for (std::size_t r = 0; r < cell.episodes.size(); ++r)
      os << cell.policy << ',' << cell.horizon << ',' << r << ',' << cell.episodes[r].seed << ','
         << csv::fmt(cell.episodes[r].total_revenue) << ',' << csv::fmt(cell.episodes[r].regret)
         << '\n';
}

struct SummaryRow {
  std::string policy;
  long horizon = 0;
  int replicates = 0;
  double mean_regret = 0.0;
  double std_err = 0.0;
};

inline std::vector<SummaryRow> parse_summary_csv(std::istream& is) {
  std::vector<SummaryRow> rows;
  std::string line;
  if (!std::getline(is, line) || line != "policy,T,replicates,mean_regret,std_err")
    throw std::invalid_argument("bad summary CSV header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = csv::split_line(line);
    if (f.size() != 5) throw std::invalid_argument("bad summary CSV row: " + line);
    rows.push_back({f[0], std::stol(f[1]), std::stoi(f[2]), csv::parse_double(f[3]),
                    csv::parse_double(f[4])});
  }
  return rows;
}

// compute_sweep + CSV files (summary.csv, exponents.csv, episodes.csv) in
// cfg.output_dir. Repeated invocations produce byte-identical files.
inline SweepResult run_sweep(const ExperimentConfig& cfg, int threads = 1) {
  const SweepResult result = compute_sweep(cfg, threads);
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  auto dump = [&](const std::string& name, auto writer) {
    std::ofstream out(fs::path(cfg.output_dir) / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + name + " under " + cfg.output_dir);
    writer(out);
  };
  dump("summary.csv", [&](std::ostream& os) { write_summary_csv(os, result); });
  dump("exponents.csv", [&](std::ostream& os) { write_exponent_csv(os, result); });
  dump("episodes.csv", [&](std::ostream& os) { write_episodes_csv(os, result); });
  return result;
}

// ---- statistical validation suites ------------------------------------------

struct CoverageReport {
  int episodes = 0;
  int violation_episodes = 0;  // episodes with any round where LB > theta
  double rate = 0.0;
  double bound = 0.0;  // eta + 3 sqrt(eta(1-eta)/N)
  bool pass = false;
};

// Empirical check that buyers' lower confidence bounds stay below the true
// ex-ante value: with exact_lb buyers the threshold IS the bound, so a round
// violates iff tau > theta of the arriving type. Works under any policy.
inline CoverageReport validate_pessimism_coverage(const ProblemInstance& inst,
                                                  const std::string& policy_spec,
                                                  const TwoPhaseParams& params, double eta,
                                                  int episodes, std::uint64_t base_seed,
                                                  int threads = 1) {
  const BuyerModel buyer = BuyerModel::parse("exact_lb", eta);
  std::vector<char> violated(static_cast<std::size_t>(episodes), 0);
  detail::parallel_for(static_cast<std::size_t>(episodes), threads, [&](std::size_t k) {
    auto policy = make_policy(policy_spec, inst, params);
    bool hit = false;
    EpisodeOptions opts;
    opts.record_rounds = false;
    opts.observer = [&](const RoundView& view) {
      if (view.round.threshold > inst.theta[static_cast<std::size_t>(view.round.type)])
        hit = true;
    };
    run_episode(inst, *policy, buyer,
                episode_seed(base_seed, "coverage/" + policy_spec, 0, k), opts);
    violated[k] = hit ? 1 : 0;
  });

  CoverageReport report;
  report.episodes = episodes;
  for (char v : violated) report.violation_episodes += v;
  report.rate = static_cast<double>(report.violation_episodes) / static_cast<double>(episodes);
  report.bound = eta + 3.0 * std::sqrt(eta * (1.0 - eta) / static_cast<double>(episodes));
  report.pass = report.rate <= report.bound;
  return report;
}

struct RevOraclePair {
  double price = 0.0;
  TypeSet within;
  double analytic = 0.0;
  double empirical = 0.0;
  double band = 0.0;
  bool pass = false;
};

struct RevOracleReport {
  std::vector<RevOraclePair> pairs;
  long draws_per_pair = 0;
  bool pass = false;
};

// Monte Carlo cross-check of the analytic expected-revenue function against
// raw type sampling: |analytic - empirical| must stay within a 4-sigma
// binomial band for each random (price, subset) pair.
inline RevOracleReport validate_rev_oracle(const ProblemInstance& inst, long n_draws,
                                           int n_pairs, std::uint64_t seed) {
  if (n_draws < 10000)
    throw std::invalid_argument("validate_rev_oracle: need at least 1e4 draws");
  RevOracleReport report;
  report.draws_per_pair = n_draws;
  report.pass = true;
  std::mt19937_64 rng(mix64(seed ^ 0x9E3779B9ULL));

  for (int k = 0; k < n_pairs; ++k) {
    RevOraclePair pair;
    pair.price = uniform01(rng);
    for (int i = 0; i < inst.num_types; ++i)
      if (rng() & 1) pair.within.push_back(i);
    pair.analytic = expected_revenue(inst, pair.price, pair.within);

    std::vector<char> in_set(static_cast<std::size_t>(inst.num_types), 0);
    for (int i : pair.within) in_set[static_cast<std::size_t>(i)] = 1;
    long count = 0;
    for (long s = 0; s < n_draws; ++s) {
      const int i = sample_type(inst, rng);
      if (in_set[static_cast<std::size_t>(i)] &&
          inst.theta[static_cast<std::size_t>(i)] >= pair.price)
        ++count;
    }
    // Integer counting keeps the degenerate bands (v = 0 or 1) exact.
    pair.empirical =
        pair.price * (static_cast<double>(count) / static_cast<double>(n_draws));
    const double v = pair.price > 0.0 ? pair.analytic / pair.price : 0.0;
    pair.band = 4.0 * std::sqrt(pair.price * pair.price * v * (1.0 - v) /
                                static_cast<double>(n_draws));
    pair.pass = std::abs(pair.empirical - pair.analytic) <= pair.band;
    report.pass = report.pass && pair.pass;
    report.pairs.push_back(std::move(pair));
  }
  return report;
}

}  // namespace revsim
