#include "tcoq/cobyla.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace tcoq::optim {

namespace {

struct BudgetExhausted {};

struct Evaluator {
  explicit Evaluator(const ObjectiveHandle& obj) : objective(obj) {}

  const ObjectiveHandle& objective;
  int count = 0;
  std::vector<double> best_point;
  double best_value = 0.0;

  double operator()(const std::vector<double>& x) {
    if (count >= objective.budget) throw BudgetExhausted{};
    const double v = objective.evaluator(x);
    ++count;
    if (!std::isfinite(v))
      throw std::runtime_error("objective returned a non-finite value");
    if (count == 1 || v < best_value) {
      best_value = v;
      best_point = x;
    }
    return v;
  }
};

// Gauss-Jordan inverse with partial pivoting. Returns false when the matrix
// is numerically singular.
bool invert(std::vector<std::vector<double>>& m,
            std::vector<std::vector<double>>& inv) {
  const std::size_t d = m.size();
  inv.assign(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) inv[i][i] = 1.0;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (std::abs(m[pivot][col]) < 1e-14) return false;
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const double scale = 1.0 / m[col][col];
    for (std::size_t c = 0; c < d; ++c) {
      m[col][c] *= scale;
      inv[col][c] *= scale;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col) continue;
      const double factor = m[r][col];
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < d; ++c) {
        m[r][c] -= factor * m[col][c];
        inv[r][c] -= factor * inv[col][c];
      }
    }
  }
  return true;
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

Report minimize(const ObjectiveHandle& objective, std::span<const double> start,
                const Options& options) {
  const std::size_t d = objective.arity;
  if (d == 0) throw std::invalid_argument("objective arity must be positive");
  if (start.size() != d)
    throw std::invalid_argument("start point dimension does not match arity");
  if (objective.budget < static_cast<int>(d) + 2)
    throw std::invalid_argument("evaluation budget must be at least arity + 2");
  if (!(options.rho_end > 0.0) || options.rho_end > options.rho_begin)
    throw std::invalid_argument("need 0 < rho_end <= rho_begin");

  Evaluator eval{objective};
  double rho = options.rho_begin;
  bool converged = false;

  // Simplex vertices and values; vertex 0 is kept at the current best.
  std::vector<std::vector<double>> vertex(d + 1, std::vector<double>(start.begin(), start.end()));
  std::vector<double> value(d + 1);

  try {
    value[0] = eval(vertex[0]);
    for (std::size_t i = 1; i <= d; ++i) {
      vertex[i][i - 1] += rho;
      value[i] = eval(vertex[i]);
    }

    std::vector<std::vector<double>> edges(d, std::vector<double>(d));
    std::vector<std::vector<double>> inverse;
    for (;;) {
      const std::size_t best =
          std::min_element(value.begin(), value.end()) - value.begin();
      if (best != 0) {
        std::swap(vertex[0], vertex[best]);
        std::swap(value[0], value[best]);
      }

      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t c = 0; c < d; ++c)
          edges[i][c] = vertex[i + 1][c] - vertex[0][c];

      auto rebuild = [&] {
        for (std::size_t i = 1; i <= d; ++i) {
          vertex[i] = vertex[0];
          vertex[i][i - 1] += rho;
          value[i] = eval(vertex[i]);
        }
      };

      auto copy = edges;
      if (!invert(copy, inverse)) {
        rebuild();
        continue;
      }

      // Linear model through the vertices: g solves edges * g = dF.
      std::vector<double> g(d, 0.0);
      for (std::size_t i = 0; i < d; ++i) {
        const double df = value[i + 1] - value[0];
        for (std::size_t c = 0; c < d; ++c) g[c] += inverse[c][i] * df;
      }

      // Geometry maintenance: no vertex further than 2.1 rho from the best,
      // and no vertex closer than 0.25 rho to the opposite face.
      std::size_t offender = 0;
      double worst_len = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        const double len = norm(edges[i]);
        if (len > worst_len) {
          worst_len = len;
          offender = i;
        }
      }
      // Vertex-to-opposite-face distance of vertex j+1 is the reciprocal
      // norm of column j of the inverse edge matrix.
      double min_sigma = 0.0;
      std::size_t flat = 0;
      for (std::size_t j = 0; j < d; ++j) {
        double colnorm = 0.0;
        for (std::size_t c = 0; c < d; ++c) colnorm += inverse[c][j] * inverse[c][j];
        const double sigma = 1.0 / std::sqrt(colnorm);
        if (j == 0 || sigma < min_sigma) {
          min_sigma = sigma;
          flat = j;
        }
      }
      if (worst_len > 2.1 * rho || min_sigma < 0.25 * rho) {
        const std::size_t j = worst_len > 2.1 * rho ? offender : flat;
        // Move the offending vertex to distance rho from the opposite face,
        // along the face normal, in the model's descent direction.
        std::vector<double> dir(d);
        double r = 0.0;
        for (std::size_t c = 0; c < d; ++c) r += inverse[c][j] * inverse[c][j];
        r = std::sqrt(r);
        double slope = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          dir[c] = inverse[c][j] / r;
          slope += g[c] * dir[c];
        }
        const double sign = slope > 0.0 ? -1.0 : 1.0;
        for (std::size_t c = 0; c < d; ++c)
          vertex[j + 1][c] = vertex[0][c] + sign * rho * dir[c];
        value[j + 1] = eval(vertex[j + 1]);
        continue;
      }

      const double gnorm = norm(g);
      if (gnorm < 1e-15) {
        rho *= 0.5;
        if (rho < options.rho_end) {
          converged = true;
          break;
        }
        rebuild();
        continue;
      }

      // Trust-region step on the linear model.
      std::vector<double> trial(d);
      for (std::size_t c = 0; c < d; ++c)
        trial[c] = vertex[0][c] - rho * g[c] / gnorm;
      const double trial_value = eval(trial);

      std::size_t worst = 1;
      for (std::size_t i = 2; i <= d; ++i)
        if (value[i] > value[worst]) worst = i;
      if (trial_value < value[worst]) {
        vertex[worst] = std::move(trial);
        value[worst] = trial_value;
      }

      if (trial_value > value[0] - 0.1 * rho * gnorm) {
        rho *= 0.5;
        if (rho < options.rho_end) {
          converged = true;
          break;
        }
      }
    }
  } catch (const BudgetExhausted&) {
  }

  return Report{std::move(eval.best_point), eval.best_value, eval.count,
                converged};
}

}  // namespace tcoq::optim
