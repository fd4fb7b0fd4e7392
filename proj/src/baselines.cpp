#include "tcoq/baselines.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "tcoq/loch.hpp"

namespace tcoq {

RunRecord div_qaoa(const QuadraticForm& form, const DivQaoaConfig& config) {
  const std::size_t n = form.size();
  if (config.sub_size < 1 || static_cast<std::size_t>(config.sub_size) > n)
    throw std::invalid_argument("sub-problem size must lie in [1, n]");
  const std::size_t sub = config.sub_size;
  const std::size_t coverage = (n + sub - 1) / sub;
  if (static_cast<std::size_t>(config.total_runs) < coverage)
    throw std::invalid_argument(
        "run budget below the coverage minimum ceil(n / sub_size)");

  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(config.seed);
  RunRecord record;
  record.seed = config.seed;

  std::vector<spin_t> z(n);
  for (auto& s : z) s = static_cast<spin_t>(rng.spin());
  double fval = quadratic_value(form, z, true);
  record.best_fval = fval;
  record.best_z = z;

  // Shuffled identity, chopped into blocks: the coverage partition.
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i)
    std::swap(perm[i - 1], perm[rng.below(i)]);

  for (int run = 0; run < config.total_runs; ++run) {
    std::vector<std::uint32_t> window;
    if (static_cast<std::size_t>(run) < coverage) {
      const std::size_t lo = run * sub;
      const std::size_t hi = std::min(lo + sub, n);
      window.assign(perm.begin() + lo, perm.begin() + hi);
    } else {
      // Fresh random subset: prefix of a new shuffle.
      for (std::size_t i = 0; i < sub; ++i)
        std::swap(perm[i], perm[i + rng.below(n - i)]);
      window.assign(perm.begin(), perm.begin() + sub);
    }

    const QuadraticForm clamped = clamp(form, window, z);
    QaoaConfig qcfg = config.qaoa;
    qcfg.seed = rng.bits();
    const auto q0 = std::chrono::steady_clock::now();
    const QaoaResult sub_result = run_qaoa(clamped, qcfg);
    record.qaoa_time += std::chrono::steady_clock::now() - q0;
    ++record.num_eva;

    auto [next_z, next_fval] = accept_subsolution(z, window, sub_result, form);
    z = std::move(next_z);
    fval = next_fval;
    if (fval < record.best_fval) {
      record.best_fval = fval;
      record.best_z = z;
    }
    const auto now = std::chrono::steady_clock::now();
    record.trace.push_back({run + 1, fval, record.num_eva,
                            std::chrono::duration_cast<std::chrono::nanoseconds>(now - t0),
                            record.qaoa_time});
  }

  record.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - t0);
  return record;
}

RunRecord ga_minimize(const ProblemSpec& spec, const GaConfig& config) {
  const std::size_t n = spec.size();
  if (config.pop_size < 2)
    throw std::invalid_argument("population size must be at least 2");
  if (config.eval_budget < config.pop_size)
    throw std::invalid_argument("evaluation budget below one population");
  const double mutation =
      config.mutation_rate.value_or(1.0 / static_cast<double>(n));
  if (mutation < 0.0 || mutation > 1.0 || config.crossover_rate < 0.0 ||
      config.crossover_rate > 1.0)
    throw std::invalid_argument("operator rates must lie in [0, 1]");

  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(config.seed);
  RunRecord record;
  record.seed = config.seed;

  const std::size_t pop_size = config.pop_size;
  std::vector<std::vector<spin_t>> pop(pop_size, std::vector<spin_t>(n));
  std::vector<double> fit(pop_size);
  long evals = 0;

  auto evaluate = [&](const std::vector<spin_t>& z) {
    ++evals;
    const double f = evaluate_direct(spec, z);
    if (record.best_z.empty() || f < record.best_fval) {
      record.best_fval = f;
      record.best_z = z;
      record.num_eva = evals;
    }
    return f;
  };

  for (std::size_t i = 0; i < pop_size; ++i) {
    for (auto& s : pop[i]) s = static_cast<spin_t>(rng.spin());
    fit[i] = evaluate(pop[i]);
  }

  auto tournament = [&]() -> std::size_t {
    const std::size_t a = rng.below(pop_size);
    const std::size_t b = rng.below(pop_size);
    return fit[a] <= fit[b] ? a : b;
  };

  int generation = 0;
  while (evals + static_cast<long>(pop_size) <= config.eval_budget) {
    ++generation;
    std::size_t elite = 0;
    for (std::size_t i = 1; i < pop_size; ++i)
      if (fit[i] < fit[elite]) elite = i;
    const std::vector<spin_t> elite_z = pop[elite];
    const double elite_fit = fit[elite];

    std::vector<std::vector<spin_t>> next;
    std::vector<double> next_fit;
    next.reserve(pop_size);
    next_fit.reserve(pop_size);
    while (next.size() < pop_size) {
      std::vector<spin_t> a = pop[tournament()];
      std::vector<spin_t> b = pop[tournament()];
      if (n > 1 && rng.uniform01() < config.crossover_rate) {
        const std::size_t cut = 1 + rng.below(n - 1);
        for (std::size_t k = cut; k < n; ++k) std::swap(a[k], b[k]);
      }
      for (auto* child : {&a, &b}) {
        for (auto& s : *child)
          if (rng.uniform01() < mutation) s = static_cast<spin_t>(-s);
        if (next.size() < pop_size) {
          next_fit.push_back(evaluate(*child));
          next.push_back(std::move(*child));
        }
      }
    }

    // Single-elite survival: the previous best displaces the worst child.
    std::size_t worst = 0;
    for (std::size_t i = 1; i < pop_size; ++i)
      if (next_fit[i] > next_fit[worst]) worst = i;
    if (elite_fit < next_fit[worst]) {
      next[worst] = elite_z;
      next_fit[worst] = elite_fit;
    }
    pop = std::move(next);
    fit = std::move(next_fit);

    const auto now = std::chrono::steady_clock::now();
    record.trace.push_back({generation, record.best_fval, evals,
                            std::chrono::duration_cast<std::chrono::nanoseconds>(now - t0),
                            std::chrono::nanoseconds{0}});
  }

  record.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - t0);
  return record;
}

RunRecord random_search(const QuadraticForm& form, long iterations,
                        std::uint64_t seed) {
  if (iterations < 1)
    throw std::invalid_argument("random search needs at least one draw");
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(seed);
  RunRecord record;
  record.seed = seed;

  std::vector<spin_t> z(form.size());
  for (long it = 1; it <= iterations; ++it) {
    for (auto& s : z) s = static_cast<spin_t>(rng.spin());
    const double f = quadratic_value(form, z, true);
    if (record.best_z.empty() || f < record.best_fval) {
      record.best_fval = f;
      record.best_z = z;
      const auto now = std::chrono::steady_clock::now();
      record.trace.push_back({static_cast<int>(it), f, it,
                              std::chrono::duration_cast<std::chrono::nanoseconds>(now - t0),
                              std::chrono::nanoseconds{0}});
    }
  }
  record.num_eva = iterations;
  record.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - t0);
  return record;
}

Assignment brute_force(const QuadraticForm& form, int max_vars) {
  const std::size_t n = form.size();
  if (n > static_cast<std::size_t>(max_vars) || max_vars > 63)
    throw std::invalid_argument("exhaustive search limited to " +
                                std::to_string(max_vars) + " variables");

  // Gray-code walk: consecutive codes differ by one flipped bit, so each
  // step is a single-flip delta instead of a full re-evaluation.
  std::vector<spin_t> z(n, spin_t{-1});
  double fval = quadratic_value(form, z, true);
  std::uint64_t best_code = 0;
  double best_fval = fval;

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const int bit = std::countr_zero(k);
    double coupling = form.linear()[bit];
    for (const Neighbor& nb : form.neighbors(static_cast<std::uint32_t>(bit)))
      coupling += nb.coeff * static_cast<double>(z[nb.index]);
    fval -= 2.0 * static_cast<double>(z[bit]) * coupling;
    z[bit] = static_cast<spin_t>(-z[bit]);
    const std::uint64_t code = k ^ (k >> 1);
    if (fval < best_fval || (fval == best_fval && code < best_code)) {
      best_fval = fval;
      best_code = code;
    }
  }

  Assignment best;
  best.z.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    best.z[j] = (best_code >> j) & 1 ? spin_t{1} : spin_t{-1};
  best.fval = quadratic_value(form, best.z, true);
  return best;
}

}  // namespace tcoq
