#include "tcoq/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tcoq::qsim {

double StateVector::norm_sq() const {
  double total = 0.0;
  for (const auto& a : amp_) total += std::norm(a);
  return total;
}

StateVector init_plus(int num_qubits, int cap) {
  if (num_qubits < 1 || num_qubits > cap || cap > kMaxQubits)
    throw std::invalid_argument("qubit count " + std::to_string(num_qubits) +
                                " outside [1, " + std::to_string(cap) + "]");
  const std::size_t dim = std::size_t{1} << num_qubits;
  StateVector state(num_qubits, dim);
  const double amp = std::pow(2.0, -0.5 * num_qubits);
  std::fill(state.amplitudes().begin(), state.amplitudes().end(),
            std::complex<double>(amp, 0.0));
  return state;
}

DiagonalEnergy::DiagonalEnergy(const QuadraticForm& form, int table_cap)
    : num_qubits_(static_cast<int>(form.size())) {
  if (form.size() > kMaxQubits)
    throw std::invalid_argument(
        "form has " + std::to_string(form.size()) +
        " variables, beyond the simulable limit; decompose the problem first");
  pair_masks_.reserve(form.pairs().size());
  pair_coeffs_.reserve(form.pairs().size());
  for (const PairTerm& t : form.pairs()) {
    pair_masks_.push_back((std::uint64_t{1} << t.i) | (std::uint64_t{1} << t.j));
    pair_coeffs_.push_back(t.coeff);
  }
  linear_.assign(form.linear().begin(), form.linear().end());
  if (num_qubits_ <= table_cap) {
    const std::uint64_t dim = std::uint64_t{1} << num_qubits_;
    table_.resize(dim);
    for (std::uint64_t x = 0; x < dim; ++x) table_[x] = eval(x);
  }
}

double DiagonalEnergy::eval(std::uint64_t x) const {
  // Spin products are exact sign flips: z_i z_j = -1 iff bits i and j differ.
  double total = 0.0;
  for (std::size_t k = 0; k < pair_masks_.size(); ++k)
    total += std::popcount(x & pair_masks_[k]) & 1 ? -pair_coeffs_[k]
                                                   : pair_coeffs_[k];
  for (std::size_t i = 0; i < linear_.size(); ++i)
    total += (x >> i) & 1 ? linear_[i] : -linear_[i];
  return total;
}

void apply_phase(StateVector& state, const DiagonalEnergy& energy, double gamma) {
  if (energy.num_qubits() != state.num_qubits())
    throw std::invalid_argument("energy and state have different qubit counts");
  auto amps = state.amplitudes();
  for (std::uint64_t x = 0; x < amps.size(); ++x)
    amps[x] *= std::polar(1.0, -gamma * energy.value(x));
}

void apply_mixer(StateVector& state, double beta) {
  const double c = std::cos(beta);
  const std::complex<double> ms(0.0, -std::sin(beta));
  auto amps = state.amplitudes();
  for (int q = 0; q < state.num_qubits(); ++q) {
    const std::size_t step = std::size_t{1} << q;
    for (std::size_t block = 0; block < amps.size(); block += 2 * step) {
      for (std::size_t k = block; k < block + step; ++k) {
        const std::complex<double> a = amps[k];
        const std::complex<double> b = amps[k + step];
        amps[k] = c * a + ms * b;
        amps[k + step] = ms * a + c * b;
      }
    }
  }
}

double expectation(const StateVector& state, const DiagonalEnergy& energy) {
  if (energy.num_qubits() != state.num_qubits())
    throw std::invalid_argument("energy and state have different qubit counts");
  auto amps = state.amplitudes();
  double total = 0.0;
  for (std::uint64_t x = 0; x < amps.size(); ++x)
    total += std::norm(amps[x]) * energy.value(x);
  return total;
}

std::vector<std::uint64_t> sample(const StateVector& state, std::size_t shots,
                                  Rng& rng) {
  auto amps = state.amplitudes();
  std::vector<double> cdf(amps.size());
  double acc = 0.0;
  for (std::size_t x = 0; x < amps.size(); ++x) {
    acc += std::norm(amps[x]);
    cdf[x] = acc;
  }
  std::vector<std::uint64_t> draws;
  draws.reserve(shots);
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = rng.uniform01() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    draws.push_back(static_cast<std::uint64_t>(
        std::min<std::ptrdiff_t>(it - cdf.begin(),
                                 static_cast<std::ptrdiff_t>(cdf.size()) - 1)));
  }
  return draws;
}

}  // namespace tcoq::qsim
