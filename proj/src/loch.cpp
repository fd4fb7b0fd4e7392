#include "tcoq/loch.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace tcoq {

std::pair<std::vector<spin_t>, double> accept_subsolution(
    std::span<const spin_t> current_z, std::span<const std::uint32_t> window,
    const QaoaResult& sub_result, const QuadraticForm& form) {
  std::vector<spin_t> candidate(current_z.begin(), current_z.end());
  const std::vector<spin_t> sub =
      decode(sub_result.best_bitstring, static_cast<int>(window.size()));
  for (std::size_t k = 0; k < window.size(); ++k)
    candidate[window[k]] = sub[k];

  const double current = quadratic_value(form, current_z, true);
  const double replaced = quadratic_value(form, candidate, true);
  if (replaced <= current) return {std::move(candidate), replaced};
  return {{current_z.begin(), current_z.end()}, current};
}

RunRecord solve(const QuadraticForm& form, const LochConfig& config) {
  const std::size_t n = form.size();
  if (config.sub_size < 1 || static_cast<std::size_t>(config.sub_size) > n)
    throw std::invalid_argument("sub-problem size must lie in [1, n]");
  if (!(config.num_fraction > 0.0) || config.num_fraction > 1.0)
    throw std::invalid_argument("num_fraction must lie in (0, 1]");
  if (config.patience < 1)
    throw std::invalid_argument("patience must be at least 1");

  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(config.seed);
  RunRecord record;
  record.seed = config.seed;

  std::vector<spin_t> z(n);
  for (auto& s : z) s = static_cast<spin_t>(rng.spin());
  double fval = quadratic_value(form, z, true);
  record.best_fval = fval;
  record.best_z = z;

  const std::size_t sub = config.sub_size;
  const std::size_t num = std::max<std::size_t>(
      static_cast<std::size_t>(std::lround(config.num_fraction * static_cast<double>(n))),
      sub);
  const std::size_t windows = (num + sub - 1) / sub;

  int stall = 0;
  for (int iteration = 1; stall < config.patience; ++iteration) {
    const std::vector<Impact> order = impact_order(form, z, fval);
    const double previous_best = record.best_fval;

    for (std::size_t w = 0; w < windows; ++w) {
      std::vector<std::uint32_t> window(sub);
      for (std::size_t k = 0; k < sub; ++k)
        window[k] = order[w * sub + k].index;

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
    }

    const auto now = std::chrono::steady_clock::now();
    record.trace.push_back({iteration, fval, record.num_eva,
                            std::chrono::duration_cast<std::chrono::nanoseconds>(now - t0),
                            record.qaoa_time});
    stall = record.best_fval < previous_best ? 0 : stall + 1;
  }

  record.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - t0);
  return record;
}

}  // namespace tcoq
