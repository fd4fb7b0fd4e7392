#include "tcoq/qaoa.hpp"

#include <numbers>
#include <stdexcept>

#include "tcoq/cobyla.hpp"
#include "tcoq/statevector.hpp"

namespace tcoq {

std::vector<spin_t> decode(std::uint64_t bitstring, int num_qubits) {
  std::vector<spin_t> z(num_qubits);
  for (int j = 0; j < num_qubits; ++j)
    z[j] = (bitstring >> j) & 1 ? spin_t{1} : spin_t{-1};
  return z;
}

std::vector<double> initial_parameters(int depth, Rng& rng) {
  std::vector<double> params(2 * depth);
  for (int l = 0; l < depth; ++l)
    params[l] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  for (int l = 0; l < depth; ++l)
    params[depth + l] = rng.uniform(0.0, std::numbers::pi);
  return params;
}

namespace {

qsim::StateVector prepare(const qsim::DiagonalEnergy& energy, int depth,
                          std::span<const double> params) {
  qsim::StateVector state = qsim::init_plus(energy.num_qubits());
  for (int l = 0; l < depth; ++l) {
    qsim::apply_phase(state, energy, params[l]);
    qsim::apply_mixer(state, params[depth + l]);
  }
  return state;
}

}  // namespace

QaoaResult run_qaoa(const QuadraticForm& form, const QaoaConfig& config) {
  if (config.depth < 1) throw std::invalid_argument("depth must be at least 1");
  if (config.shots < 1) throw std::invalid_argument("shots must be at least 1");
  const qsim::DiagonalEnergy energy(form);

  Rng rng(config.seed);
  QaoaResult result;

  optim::ObjectiveHandle handle;
  handle.arity = 2 * static_cast<std::size_t>(config.depth);
  handle.budget = config.optimizer_budget;
  handle.evaluator = [&](std::span<const double> params) {
    qsim::StateVector state = prepare(energy, config.depth, params);
    double e;
    if (config.expectation_mode == ExpectationMode::Exact) {
      e = qsim::expectation(state, energy);
    } else {
      e = 0.0;
      for (std::uint64_t x : qsim::sample(state, config.shots, rng))
        e += energy.value(x);
      e /= config.shots;
    }
    result.expectation_trace.push_back(e);
    return e;
  };

  const std::vector<double> start = initial_parameters(config.depth, rng);
  const optim::Report report = optim::minimize(handle, start);
  result.optimal_params = report.best_point;
  result.evaluations_used = report.evaluations;

  qsim::StateVector state = prepare(energy, config.depth, result.optimal_params);
  bool first = true;
  for (std::uint64_t x : qsim::sample(state, config.shots, rng)) {
    const double e = energy.value(x);
    if (first || e < result.best_energy ||
        (e == result.best_energy && x < result.best_bitstring)) {
      result.best_bitstring = x;
      result.best_energy = e;
      first = false;
    }
  }
  return result;
}

}  // namespace tcoq
