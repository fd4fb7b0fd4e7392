#pragma once

#include <cstdint>
#include <optional>

#include "tcoq/ising.hpp"
#include "tcoq/qaoa.hpp"
#include "tcoq/record.hpp"

namespace tcoq {

/// Divide-style QAOA baseline: like the decomposition solver but with random
/// windows instead of impact-ordered ones. The first ceil(n/sub_size) windows
/// form a random partition of all variables, so every variable is optimized
/// at least once; any remaining runs use fresh random subsets. total_runs
/// must cover the partition. num_eva counts QAOA executions.
struct DivQaoaConfig {
  int sub_size = 7;
  int total_runs = 0;
  QaoaConfig qaoa;
  std::uint64_t seed = 0;
};

RunRecord div_qaoa(const QuadraticForm& form, const DivQaoaConfig& config);

/// Generational genetic algorithm over spin vectors: binary tournament
/// selection, single-point crossover, per-bit flip mutation (default rate
/// 1/n), and single-elite survival. num_eva reports the evaluation index at
/// which the best value was first reached.
struct GaConfig {
  int pop_size = 10;
  long eval_budget = 400000;
  double crossover_rate = 1.0;
  std::optional<double> mutation_rate;  // default 1/n
  std::uint64_t seed = 0;
};

RunRecord ga_minimize(const ProblemSpec& spec, const GaConfig& config);

/// Uniform random assignments, best of `iterations` draws. One trace entry
/// per draw that improved the best.
RunRecord random_search(const QuadraticForm& form, long iterations,
                        std::uint64_t seed);

/// Exact minimum by exhaustive enumeration over all 2^n assignments,
/// n limited to max_vars. Ties resolve to the lowest basis-index encoding
/// (bit j = 1 means variable j is +1).
Assignment brute_force(const QuadraticForm& form, int max_vars = 26);

}  // namespace tcoq
