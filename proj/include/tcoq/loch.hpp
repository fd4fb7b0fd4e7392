#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "tcoq/ising.hpp"
#include "tcoq/qaoa.hpp"
#include "tcoq/record.hpp"

namespace tcoq {

/// Configuration of the impact-ordered decomposition solver.
struct LochConfig {
  int sub_size = 7;           // variables per sub-problem (qubits per run)
  double num_fraction = 0.15; // share of variables re-optimized per iteration
  int patience = 3;           // iterations without a new best before stopping
  QaoaConfig qaoa;            // per-sub-problem settings; seed is overridden
  std::uint64_t seed = 0;
};

/// Greedy write-back of a sub-problem result: splice the decoded sub-solution
/// into current_z at the window positions and keep the candidate only when it
/// does not worsen the full objective. Returns the surviving assignment and
/// its objective value (constant included).
std::pair<std::vector<spin_t>, double> accept_subsolution(
    std::span<const spin_t> current_z, std::span<const std::uint32_t> window,
    const QaoaResult& sub_result, const QuadraticForm& form);

/// Iterated local optimization by sub-problem decomposition: start from a
/// random assignment, rank all variables by single-flip impact, carve the
/// most impactful variables into windows of sub_size, solve each window with
/// QAOA while the rest of the assignment is clamped, and write back greedily.
/// Stops when the best value has not improved for `patience` consecutive
/// iterations. num_eva counts QAOA executions.
RunRecord solve(const QuadraticForm& form, const LochConfig& config);

}  // namespace tcoq
