#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "revsim/buyer.hpp"
#include "revsim/generators.hpp"
#include "revsim/instance.hpp"
#include "revsim/seller.hpp"

namespace revsim {

using nlohmann::json;

// ---- instance files --------------------------------------------------------
//
// {"d": 3, "horizon_T": 1000, "theta": [...], "q": [...],
//  "value_dists": [{"kind": "bernoulli", "params": [0.3]}, ...]}

inline json distribution_to_json(const ExPostDistribution& dist) {
  json j;
  j["kind"] = dist.kind_name();
  if (dist.kind() == ExPostDistribution::Kind::kUniform)
    j["params"] = {dist.param0(), dist.param1()};
  else
    j["params"] = {dist.param0()};
  return j;
}

inline ExPostDistribution distribution_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const auto params = j.at("params").get<std::vector<double>>();
  auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw std::invalid_argument("distribution '" + kind + "' expects " +
                                  std::to_string(n) + " params");
  };
  if (kind == "bernoulli") {
    need(1);
    return ExPostDistribution::bernoulli(params[0]);
  }
  if (kind == "uniform") {
    need(2);
    return ExPostDistribution::uniform(params[0], params[1]);
  }
  if (kind == "point") {
    need(1);
    return ExPostDistribution::point(params[0]);
  }
  throw std::invalid_argument("unknown distribution kind: " + kind);
}

inline json instance_to_json(const ProblemInstance& inst) {
  json j;
  j["d"] = inst.num_types;
  j["horizon_T"] = inst.horizon;
  j["theta"] = inst.theta;
  j["q"] = inst.q;
  j["value_dists"] = json::array();
  for (const auto& dist : inst.value_dists) j["value_dists"].push_back(distribution_to_json(dist));
  return j;
}

inline ProblemInstance instance_from_json(const json& j) {
  ProblemInstance inst;
  inst.num_types = j.at("d").get<int>();
  inst.horizon = j.at("horizon_T").get<long>();
  inst.theta = j.at("theta").get<std::vector<double>>();
  inst.q = j.at("q").get<std::vector<double>>();
  for (const auto& dj : j.at("value_dists")) inst.value_dists.push_back(distribution_from_json(dj));
  inst.validate();
  return inst;
}

// ---- instance family specs -------------------------------------------------

inline json instance_spec_to_json(const InstanceSpec& spec) {
  json j;
  j["family"] = spec.family_name();
  switch (spec.family) {
    case InstanceSpec::Family::kHard:
      j["d"] = spec.d;
      j["eta"] = spec.eta;
      break;
    case InstanceSpec::Family::kEasy:
      j["d"] = spec.d;
      j["q_min"] = spec.q_min;
      j["gap"] = spec.gap;
      j["seed"] = spec.seed;
      break;
    case InstanceSpec::Family::kRandom:
      j["d"] = spec.d;
      j["seed"] = spec.seed;
      break;
    case InstanceSpec::Family::kExplicit:
      j["instance"] = instance_to_json(spec.explicit_instance);
      break;
  }
  return j;
}

inline InstanceSpec instance_spec_from_json(const json& j) {
  InstanceSpec spec;
  const std::string family = j.at("family").get<std::string>();
  if (family == "hard") {
    spec.family = InstanceSpec::Family::kHard;
    spec.d = j.at("d").get<int>();
    spec.eta = j.at("eta").get<double>();
  } else if (family == "easy") {
    spec.family = InstanceSpec::Family::kEasy;
    spec.d = j.at("d").get<int>();
    spec.q_min = j.at("q_min").get<double>();
    spec.gap = j.at("gap").get<double>();
    spec.seed = j.value("seed", std::uint64_t{0});
  } else if (family == "random") {
    spec.family = InstanceSpec::Family::kRandom;
    spec.d = j.at("d").get<int>();
    spec.seed = j.value("seed", std::uint64_t{0});
  } else if (family == "explicit") {
    spec.family = InstanceSpec::Family::kExplicit;
    spec.explicit_instance = instance_from_json(j.at("instance"));
  } else {
    throw std::invalid_argument("unknown instance family: " + family);
  }
  return spec;
}

// ---- experiment configs ----------------------------------------------------

struct ExperimentConfig {
  InstanceSpec instance;
  std::vector<std::string> policies;
  std::string buyer = "exact_lb";
  double eta = 0.1;
  std::vector<long> horizons;
  int replicates = 1;
  std::uint64_t base_seed = 0;
  std::string output_dir = "out";
  double phase1_constant = 2.0;  // desk-scale default; 32 is the analysis value
  double lambda = 0.0;           // 0 = auto

  TwoPhaseParams two_phase_params() const { return {lambda, phase1_constant, eta}; }

  void validate() const {
    if (replicates < 1) throw std::invalid_argument("config: replicates must be >= 1");
    if (horizons.empty()) throw std::invalid_argument("config: horizons must be non-empty");
    for (std::size_t i = 0; i + 1 < horizons.size(); ++i)
      if (horizons[i] >= horizons[i + 1])
        throw std::invalid_argument("config: horizons must be strictly increasing");
    if (policies.empty()) throw std::invalid_argument("config: at least one policy required");
    // Resolvability check: parsing must succeed on a small instance.
    const ProblemInstance probe = instance.resolve(horizons.front());
    for (const auto& p : policies) make_policy(p, probe, two_phase_params());
    BuyerModel::parse(buyer, eta);
  }
};

inline json experiment_config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["instance"] = instance_spec_to_json(cfg.instance);
  j["policies"] = cfg.policies;
  j["buyer"] = cfg.buyer;
  j["eta"] = cfg.eta;
  j["horizons"] = cfg.horizons;
  j["replicates"] = cfg.replicates;
  j["base_seed"] = cfg.base_seed;
  j["output_dir"] = cfg.output_dir;
  j["phase1_constant"] = cfg.phase1_constant;
  if (cfg.lambda > 0.0)
    j["lambda"] = cfg.lambda;
  else
    j["lambda"] = "auto";
  return j;
}

inline ExperimentConfig experiment_config_from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.instance = instance_spec_from_json(j.at("instance"));
  cfg.policies = j.at("policies").get<std::vector<std::string>>();
  cfg.buyer = j.value("buyer", std::string("exact_lb"));
  cfg.eta = j.value("eta", 0.1);
  cfg.horizons = j.at("horizons").get<std::vector<long>>();
  cfg.replicates = j.value("replicates", 1);
  cfg.base_seed = j.value("base_seed", std::uint64_t{0});
  cfg.output_dir = j.value("output_dir", std::string("out"));
  cfg.phase1_constant = j.value("phase1_constant", 2.0);
  if (j.contains("lambda") && j["lambda"].is_number())
    cfg.lambda = j["lambda"].get<double>();
  else
    cfg.lambda = 0.0;  // "auto"
  cfg.validate();
  return cfg;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
  return experiment_config_from_json(load_json_file(path));
}

inline ProblemInstance load_instance(const std::string& path) {
  return instance_from_json(load_json_file(path));
}

}  // namespace revsim
