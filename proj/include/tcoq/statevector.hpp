#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "tcoq/ising.hpp"
#include "tcoq/rng.hpp"

namespace tcoq::qsim {

/// Hard ceiling on simulated qubits (2^24 amplitudes, ~256 MB).
inline constexpr int kMaxQubits = 24;

/// Energies are tabulated up to this many qubits; above it they are
/// evaluated on the fly.
inline constexpr int kDefaultTableCap = 20;

/// Dense statevector over num_qubits qubits. Basis index bit j is the state
/// of qubit j; qubit j represents the j-th variable of the quadratic form it
/// is simulated against. Bit 0 decodes to spin -1, bit 1 to spin +1.
class StateVector {
 public:
  StateVector(int num_qubits, std::size_t dim)
      : num_qubits_(num_qubits), amp_(dim) {}

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amp_.size(); }
  std::span<const std::complex<double>> amplitudes() const { return amp_; }
  std::span<std::complex<double>> amplitudes() { return amp_; }

  /// Squared norm; 1 for any state produced by init_plus and unitary ops.
  double norm_sq() const;

 private:
  int num_qubits_;
  std::vector<std::complex<double>> amp_;
};

/// Uniform superposition |+>^n, the QAOA start state.
StateVector init_plus(int num_qubits, int cap = kMaxQubits);

/// Diagonal of the cost Hamiltonian induced by a quadratic form (constant
/// excluded). value(x) equals quadratic_value of the decoded spins of x; for
/// small systems the 2^n values are cached in a table.
class DiagonalEnergy {
 public:
  explicit DiagonalEnergy(const QuadraticForm& form,
                          int table_cap = kDefaultTableCap);

  int num_qubits() const { return num_qubits_; }
  bool has_table() const { return !table_.empty(); }
  double value(std::uint64_t basis_index) const {
    return table_.empty() ? eval(basis_index) : table_[basis_index];
  }

 private:
  double eval(std::uint64_t x) const;

  int num_qubits_;
  std::vector<std::uint64_t> pair_masks_;
  std::vector<double> pair_coeffs_;
  std::vector<double> linear_;
  std::vector<double> table_;
};

/// Phase separation layer: amp_x *= exp(-i gamma E(x)). Norm preserving.
void apply_phase(StateVector& state, const DiagonalEnergy& energy, double gamma);

/// Transverse mixing layer: Rx(2 beta) on every qubit. Norm preserving.
void apply_mixer(StateVector& state, double beta);

/// Exact expectation of the energy diagonal: sum_x |amp_x|^2 E(x).
double expectation(const StateVector& state, const DiagonalEnergy& energy);

/// shots independent measurements in the computational basis, in draw order.
/// Deterministic for a given rng state.
std::vector<std::uint64_t> sample(const StateVector& state, std::size_t shots,
                                  Rng& rng);

}  // namespace tcoq::qsim
