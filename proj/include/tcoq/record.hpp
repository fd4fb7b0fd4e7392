#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "tcoq/ising.hpp"

namespace tcoq {

/// One point of a solver's progress trace. For the decomposition solver an
/// entry is written per outer iteration, for the divide-style baseline per
/// sub-problem run, for the genetic algorithm per generation, and for random
/// search per batch of draws. num_eva counts the solver's own unit of work
/// (QAOA executions or objective evaluations) cumulatively.
struct TraceEntry {
  int iteration;
  double fval;
  long num_eva;
  std::chrono::nanoseconds elapsed{0};
  std::chrono::nanoseconds qaoa_time{0};
};

/// Full outcome of one solver run on one instance.
struct RunRecord {
  std::uint64_t seed{0};
  std::vector<TraceEntry> trace;
  double best_fval{0.0};
  std::vector<spin_t> best_z;
  long num_eva{0};
  std::chrono::nanoseconds wall_time{0};
  std::chrono::nanoseconds qaoa_time{0};
};

}  // namespace tcoq
