// Minimal library tour: build an instance, run the two-phase policy against
// pessimistic buyers, and compare a few policies on the same seed.

#include <iostream>

#include "revsim/engine.hpp"
#include "revsim/generators.hpp"

int main() {
  using namespace revsim;

  const long T = 20000;
  const ProblemInstance inst = build_easy_instance(/*d=*/3, /*q_min=*/0.25, /*gap=*/0.25,
                                                   /*seed=*/7);
  ProblemInstance sized = inst;
  sized.horizon = T;

  const double eta = 0.1;
  const BuyerModel buyer = BuyerModel::parse("exact_lb", eta);
  const TwoPhaseParams params{/*lambda=*/0.0, /*phase1_constant=*/2.0, eta};

  std::cout << "instance: d=" << sized.num_types << " theta=[";
  for (int i = 0; i < sized.num_types; ++i)
    std::cout << sized.theta[i] << (i + 1 < sized.num_types ? ", " : "]");
  std::cout << " benchmark/round=" << benchmark_per_round(sized) << "\n";

  for (const char* spec : {"two_phase", "fixed:0.5", "oracle"}) {
    auto policy = make_policy(spec, sized, params);
    const RunTrace trace = run_episode(sized, *policy, buyer, /*seed=*/42);
    std::cout << spec << ": revenue=" << trace.total_revenue << " regret=" << trace.regret
              << "\n";
  }
  return 0;
}
