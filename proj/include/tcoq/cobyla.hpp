#pragma once

#include <functional>
#include <span>
#include <vector>

namespace tcoq::optim {

/// Objective to minimize: arity-dimensional, budget-limited in evaluations.
struct ObjectiveHandle {
  std::size_t arity;
  std::function<double(std::span<const double>)> evaluator;
  int budget;
};

struct Options {
  double rho_begin = 0.5;
  double rho_end = 1e-4;
};

struct Report {
  std::vector<double> best_point;
  double best_value;
  int evaluations;
  bool converged;  // trust region reached rho_end before the budget ran out
};

/// Derivative-free minimization in the COBYLA family: a nondegenerate
/// simplex of arity+1 points carries a linear interpolation model of the
/// objective, a trust-region step descends the model, and the radius shrinks
/// when the model stops paying off. Geometry of the simplex is repaired
/// whenever it degenerates. Deterministic; never returns a point worse than
/// the start; never exceeds the budget (which must be at least arity + 2).
Report minimize(const ObjectiveHandle& objective, std::span<const double> start,
                const Options& options = {});

}  // namespace tcoq::optim
