#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "revsim/config.hpp"
#include "revsim/experiment.hpp"

using namespace revsim;
using Catch::Matchers::WithinAbs;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.instance.family = InstanceSpec::Family::kEasy;
  cfg.instance.d = 3;
  cfg.instance.q_min = 0.25;
  cfg.instance.gap = 0.25;
  cfg.instance.seed = 7;
  cfg.policies = {"two_phase", "fixed:0.3"};
  cfg.buyer = "exact_lb";
  cfg.eta = 0.1;
  cfg.horizons = {400, 800};
  cfg.replicates = 6;
  cfg.base_seed = 99;
  cfg.phase1_constant = 2.0;
  return cfg;
}

std::string render_csvs(const SweepResult& result) {
  std::ostringstream os;
  write_summary_csv(os, result);
  write_exponent_csv(os, result);
  write_episodes_csv(os, result);
  return os.str();
}

}  // namespace

TEST_CASE("instance file round trip") {
  ProblemInstance inst;
  inst.num_types = 3;
  inst.horizon = 123;
  inst.theta = {0.25, 0.5, 0.75};
  inst.q = {0.4, 0.35, 0.25};
  inst.value_dists.push_back(ExPostDistribution::bernoulli(0.25));
  inst.value_dists.push_back(ExPostDistribution::uniform(0.4, 0.6));
  inst.value_dists.push_back(ExPostDistribution::point(0.75));
  inst.validate();

  const ProblemInstance back = instance_from_json(instance_to_json(inst));
  CHECK(back.num_types == inst.num_types);
  CHECK(back.horizon == inst.horizon);
  CHECK(back.theta == inst.theta);
  CHECK(back.q == inst.q);
  for (int i = 0; i < 3; ++i) {
    CHECK(back.value_dists[i].kind() == inst.value_dists[i].kind());
    CHECK(back.value_dists[i].param0() == inst.value_dists[i].param0());
    CHECK(back.value_dists[i].param1() == inst.value_dists[i].param1());
  }
}

TEST_CASE("experiment config round trip") {
  const ExperimentConfig cfg = small_config();
  const ExperimentConfig back = experiment_config_from_json(experiment_config_to_json(cfg));
  CHECK(back.policies == cfg.policies);
  CHECK(back.buyer == cfg.buyer);
  CHECK(back.horizons == cfg.horizons);
  CHECK(back.replicates == cfg.replicates);
  CHECK(back.base_seed == cfg.base_seed);
  CHECK(back.eta == cfg.eta);
  CHECK(back.phase1_constant == cfg.phase1_constant);
  CHECK(back.lambda == cfg.lambda);
  CHECK(back.instance.family_name() == "easy");

  SECTION("lambda accepts a number or auto") {
    json j = experiment_config_to_json(cfg);
    CHECK(j["lambda"] == "auto");
    j["lambda"] = 0.05;
    CHECK(experiment_config_from_json(j).lambda == 0.05);
  }
  SECTION("bad configs are rejected") {
    json j = experiment_config_to_json(cfg);
    j["horizons"] = {800, 400};
    CHECK_THROWS_AS(experiment_config_from_json(j), std::invalid_argument);
    j = experiment_config_to_json(cfg);
    j["replicates"] = 0;
    CHECK_THROWS_AS(experiment_config_from_json(j), std::invalid_argument);
    j = experiment_config_to_json(cfg);
    j["policies"] = {"warp_drive"};
    CHECK_THROWS_AS(experiment_config_from_json(j), std::invalid_argument);
  }
}

TEST_CASE("free-price sweep cell equals the analytic regret") {
  ExperimentConfig cfg = small_config();
  cfg.policies = {"fixed:0"};
  cfg.horizons = {500};
  cfg.replicates = 1;
  const SweepResult result = compute_sweep(cfg);
  REQUIRE(result.cells.size() == 1);
  const ProblemInstance inst = cfg.instance.resolve(500);
  CHECK_THAT(result.cells[0].mean_regret, WithinAbs(500.0 * benchmark_per_round(inst), 1e-9));
  CHECK(result.cells[0].std_err == 0.0);
}

TEST_CASE("sweeps are deterministic and thread-count invariant") {
  const ExperimentConfig cfg = small_config();
  const SweepResult serial_a = compute_sweep(cfg, 1);
  const SweepResult serial_b = compute_sweep(cfg, 1);
  const SweepResult threaded = compute_sweep(cfg, 4);

  const std::string csv_a = render_csvs(serial_a);
  CHECK(csv_a == render_csvs(serial_b));
  CHECK(csv_a == render_csvs(threaded));  // byte-identical under parallelism

  // Exponent report exists for both policies over two horizons.
  CHECK(serial_a.exponents.size() == 2);
}

TEST_CASE("summary CSV round trip reproduces the scalars exactly") {
  const ExperimentConfig cfg = small_config();
  const SweepResult result = compute_sweep(cfg, 2);
  std::ostringstream os;
  write_summary_csv(os, result);
  std::istringstream is(os.str());
  const auto rows = parse_summary_csv(is);
  REQUIRE(rows.size() == result.cells.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].policy == result.cells[i].policy);
    CHECK(rows[i].horizon == result.cells[i].horizon);
    CHECK(rows[i].replicates == static_cast<int>(result.cells[i].episodes.size()));
    CHECK(rows[i].mean_regret == result.cells[i].mean_regret);  // %.17g is lossless
    CHECK(rows[i].std_err == result.cells[i].std_err);
  }
}

TEST_CASE("run_sweep writes byte-identical files on repeat") {
  namespace fs = std::filesystem;
  ExperimentConfig cfg = small_config();
  cfg.replicates = 3;
  const fs::path dir = fs::temp_directory_path() / "revsim_test_sweep";
  fs::remove_all(dir);

  auto read_all = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  cfg.output_dir = (dir / "a").string();
  run_sweep(cfg, 1);
  cfg.output_dir = (dir / "b").string();
  run_sweep(cfg, 3);
  for (const char* name : {"summary.csv", "exponents.csv", "episodes.csv"}) {
    CHECK(read_all(dir / "a" / name) == read_all(dir / "b" / name));
    CHECK(!read_all(dir / "a" / name).empty());
  }
  fs::remove_all(dir);
}

TEST_CASE("oracle + omniscient mean regret is statistically zero") {
  ExperimentConfig cfg = small_config();
  cfg.policies = {"oracle"};
  cfg.buyer = "omniscient";
  cfg.horizons = {2000};
  cfg.replicates = 50;
  const SweepResult result = compute_sweep(cfg, 4);
  const CellResult& cell = result.cells[0];
  CHECK(std::abs(cell.mean_regret) <= 4.0 * cell.std_err);
}

TEST_CASE("pessimism coverage validation") {
  SECTION("noise-free reviews can never violate the bound") {
    ProblemInstance inst;
    inst.num_types = 2;
    inst.horizon = 200;
    inst.theta = {0.4, 0.8};
    inst.q = {0.5, 0.5};
    inst.value_dists.push_back(ExPostDistribution::point(0.4));
    inst.value_dists.push_back(ExPostDistribution::point(0.8));
    inst.validate();
    const CoverageReport rep =
        validate_pessimism_coverage(inst, "two_phase", {0.0, 2.0, 0.1}, 0.1, 100, 4);
    CHECK(rep.violation_episodes == 0);
    CHECK(rep.pass);
  }
  SECTION("bernoulli noise stays within the eta band") {
    ProblemInstance inst;
    inst.num_types = 3;
    inst.horizon = 150;
    inst.theta = {0.3, 0.6, 0.9};
    inst.q = {0.2, 0.3, 0.5};
    for (double th : inst.theta) inst.value_dists.push_back(ExPostDistribution::bernoulli(th));
    inst.validate();
    const CoverageReport rep =
        validate_pessimism_coverage(inst, "fixed:0", {0.0, 2.0, 0.1}, 0.1, 400, 4, 2);
    CHECK(rep.episodes == 400);
    CHECK(rep.pass);
  }
}

TEST_CASE("hard-instance files round trip") {
  const ProblemInstance inst = build_hard_instance(10000, 3, 0.1);
  const ProblemInstance back = instance_from_json(instance_to_json(inst));
  CHECK(back.theta == inst.theta);
  CHECK(back.q == inst.q);
  CHECK(back.horizon == inst.horizon);
  CHECK(back.value_dists[0].kind() == ExPostDistribution::Kind::kUniform);
}

TEST_CASE("near-one eta makes the coverage bound vacuous") {
  ProblemInstance inst;
  inst.num_types = 2;
  inst.horizon = 50;
  inst.theta = {0.4, 0.8};
  inst.q = {0.5, 0.5};
  for (double th : inst.theta) inst.value_dists.push_back(ExPostDistribution::bernoulli(th));
  inst.validate();
  const CoverageReport rep =
      validate_pessimism_coverage(inst, "fixed:0", {0.0, 2.0, 0.999}, 0.999, 50, 8);
  CHECK(rep.bound >= 1.0);
  CHECK(rep.pass);
}

TEST_CASE("revenue oracle validation") {
  const ProblemInstance inst = build_random_instance(4, 2024);
  const RevOracleReport rep = validate_rev_oracle(inst, 100000, 20, 11);
  CHECK(rep.pairs.size() == 20);
  CHECK(rep.pass);
  for (const auto& p : rep.pairs) {
    if (p.within.empty() || p.price == 0.0) {
      CHECK(p.analytic == 0.0);
      CHECK(p.empirical == 0.0);
    }
  }
  CHECK_THROWS_AS(validate_rev_oracle(inst, 100, 5, 1), std::invalid_argument);
}
