#pragma once

#include <cstdint>
#include <vector>

#include "tcoq/ising.hpp"
#include "tcoq/rng.hpp"

namespace tcoq {

enum class ExpectationMode {
  Exact,    // sum over all basis states
  Sampled,  // Monte Carlo estimate from `shots` measurements
};

struct QaoaConfig {
  int depth = 1;              // alternating layer count p
  int optimizer_budget = 100; // objective evaluations for the parameter search
  int shots = 1024;           // measurements drawn from the optimized state
  ExpectationMode expectation_mode = ExpectationMode::Exact;
  std::uint64_t seed = 0;
};

struct QaoaResult {
  std::uint64_t best_bitstring{0};
  double best_energy{0.0};  // diagonal energy of best_bitstring, no constant
  std::vector<double> optimal_params;      // gamma_1..gamma_p, beta_1..beta_p
  std::vector<double> expectation_trace;   // one entry per objective evaluation
  int evaluations_used{0};
};

/// Map a measured basis index to spins: bit j of the index is variable j,
/// bit value 0 decodes to spin -1 (selected), 1 to +1.
std::vector<spin_t> decode(std::uint64_t bitstring, int num_qubits);

/// Random starting angles: phase angles uniform in [0, 2pi), mixing angles
/// uniform in [0, pi). Layout matches QaoaResult::optimal_params.
std::vector<double> initial_parameters(int depth, Rng& rng);

/// Full QAOA run on one quadratic form: simulate p alternating phase/mixer
/// layers, tune the 2p angles with the derivative-free optimizer, then draw
/// `shots` measurements from the tuned state and return the sampled basis
/// state of lowest energy (ties broken toward the lowest basis index).
/// The form must fit the simulator; larger problems must be decomposed.
QaoaResult run_qaoa(const QuadraticForm& form, const QaoaConfig& config);

}  // namespace tcoq
