// Experiment driver for the review-market simulator.
//
//   revsim run           one episode, trace CSV to a file or stdout
//   revsim sweep         replicate sweep from a config file, CSVs + exponents
//   revsim validate      coverage + revenue-oracle statistical suites
//   revsim hard-instance print a worst-case instance as an instance file

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "revsim/config.hpp"
#include "revsim/engine.hpp"
#include "revsim/experiment.hpp"
#include "revsim/generators.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& policy_override,
            long horizon_override, std::uint64_t seed, const std::string& trace_path) {
  revsim::ExperimentConfig cfg = revsim::load_experiment_config(config_path);
  const std::string policy_spec =
      policy_override.empty() ? cfg.policies.front() : policy_override;
  const long T = horizon_override > 0 ? horizon_override : cfg.horizons.front();

  const revsim::ProblemInstance inst = cfg.instance.resolve(T);
  auto policy = revsim::make_policy(policy_spec, inst, cfg.two_phase_params());
  const revsim::BuyerModel buyer = revsim::BuyerModel::parse(cfg.buyer, cfg.eta);

  const revsim::RunTrace trace = revsim::run_episode(inst, *policy, buyer, seed);

  if (trace_path.empty() || trace_path == "-") {
    revsim::write_trace_csv(std::cout, trace);
  } else {
    std::ofstream out(trace_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << trace_path << "\n";
      return 1;
    }
    revsim::write_trace_csv(out, trace);
  }
  std::cerr << "policy=" << policy_spec << " T=" << T << " seed=" << seed
            << " revenue=" << trace.total_revenue << " regret=" << trace.regret << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir, int threads) {
  revsim::ExperimentConfig cfg = revsim::load_experiment_config(config_path);
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  const revsim::SweepResult result = revsim::run_sweep(cfg, threads);
  std::cerr << "wrote " << cfg.output_dir << "/{summary,exponents,episodes}.csv\n";
  for (const auto& [policy, fit] : result.exponents) {
    std::cout << policy << ": regret ~ T^" << fit.slope << " (over " << fit.n_points
              << " horizons)\n";
    if (fit.n_dropped > 0)
      std::cerr << "warning: " << policy << ": " << fit.n_dropped
                << " nonpositive mean regrets excluded from the fit\n";
  }
  if (cfg.horizons.size() >= 2 && result.exponents.size() < cfg.policies.size())
    std::cerr << "warning: some policies had too few positive mean regrets to fit\n";
  return 0;
}

int cmd_validate(int episodes, long oracle_draws, std::uint64_t seed, int threads) {
  using namespace revsim;
  bool all_pass = true;

  // Coverage: exact_lb buyers with Bernoulli noise under both a learning and
  // a fixed policy; episode violation rate must stay within the eta band.
  ProblemInstance inst;
  inst.num_types = 3;
  inst.horizon = 300;
  inst.theta = {0.3, 0.6, 0.9};
  inst.q = {0.2, 0.3, 0.5};
  for (double th : inst.theta)
    inst.value_dists.push_back(ExPostDistribution::bernoulli(th));
  inst.validate();

  const double eta = 0.1;
  const TwoPhaseParams params{0.0, 2.0, eta};
  for (const std::string policy : {"two_phase", "fixed:0.3"}) {
    const CoverageReport rep =
        validate_pessimism_coverage(inst, policy, params, eta, episodes, seed, threads);
    std::cout << (rep.pass ? "[PASS]" : "[FAIL]") << " pessimism-coverage policy=" << policy
              << " rate=" << rep.rate << " bound=" << rep.bound << " (N=" << rep.episodes
              << ")\n";
    all_pass = all_pass && rep.pass;
  }

  // Revenue oracle: analytic expected revenue vs Monte Carlo on random
  // instances and random (price, subset) pairs.
  for (int k = 0; k < 10; ++k) {
    const ProblemInstance rnd = build_random_instance(2 + k % 7, seed + static_cast<std::uint64_t>(k));
    const RevOracleReport rep = validate_rev_oracle(rnd, oracle_draws, 20, seed + static_cast<std::uint64_t>(k));
    double worst = 0.0;
    for (const auto& p : rep.pairs)
      worst = std::max(worst, std::abs(p.empirical - p.analytic));
    std::cout << (rep.pass ? "[PASS]" : "[FAIL]") << " rev-oracle instance=" << k
              << " d=" << rnd.num_types << " max|dev|=" << worst << "\n";
    all_pass = all_pass && rep.pass;
  }

  std::cout << (all_pass ? "validation passed" : "validation FAILED") << "\n";
  return all_pass ? 0 : 1;
}

int cmd_hard_instance(long T, int d, double eta, const std::string& out_path) {
  const revsim::ProblemInstance inst = revsim::build_hard_instance(T, d, eta);
  const std::string text = revsim::instance_to_json(inst).dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 1;
    }
    out << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"posted-price market simulator with review-learning buyers"};
  app.require_subcommand(1);

  std::string config_path, policy_override, trace_path, out_dir;
  long horizon_override = 0;
  std::uint64_t seed = 0;
  int threads = 1;

  auto* run = app.add_subcommand("run", "run one episode and emit its trace CSV");
  run->add_option("--config", config_path, "experiment config file")->required();
  run->add_option("--policy", policy_override, "override the config's first policy");
  run->add_option("--T", horizon_override, "override the config's first horizon");
  run->add_option("--seed", seed, "episode seed");
  run->add_option("--trace", trace_path, "trace CSV path ('-' for stdout)");

  auto* sweep = app.add_subcommand("sweep", "replicate sweep: summary CSV + exponent report");
  sweep->add_option("--config", config_path, "experiment config file")->required();
  sweep->add_option("--out-dir", out_dir, "override the config's output directory");
  sweep->add_option("--threads", threads, "episode-level parallelism");

  int episodes = 2000;
  long oracle_draws = 100000;
  auto* validate = app.add_subcommand("validate", "run the statistical validation suites");
  validate->add_option("--episodes", episodes, "coverage episodes per policy");
  validate->add_option("--draws", oracle_draws, "type draws per revenue-oracle pair");
  validate->add_option("--seed", seed, "base seed");
  validate->add_option("--threads", threads, "episode-level parallelism");

  long hard_T = 10000;
  int hard_d = 3;
  double hard_eta = 0.1;
  auto* hard = app.add_subcommand("hard-instance", "print a worst-case instance file");
  hard->add_option("--T", hard_T, "horizon");
  hard->add_option("--d", hard_d, "number of types");
  hard->add_option("--eta", hard_eta, "buyer pessimism level");
  hard->add_option("--out", out_dir, "output path ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return cmd_run(config_path, policy_override, horizon_override, seed, trace_path);
    if (sweep->parsed()) return cmd_sweep(config_path, out_dir, threads);
    if (validate->parsed()) return cmd_validate(episodes, oracle_draws, seed, threads);
    if (hard->parsed()) return cmd_hard_instance(hard_T, hard_d, hard_eta, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
