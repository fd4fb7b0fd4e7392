#include "tcoq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tcoq::stats {

namespace {

/// Midranks of the pooled values plus the tie term sum(t^3 - t) over tie
/// groups.
struct Ranked {
  std::vector<double> ranks;  // parallel to the input
  double tie_term = 0.0;
};

Ranked midranks(std::span<const double> pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
  Ranked out;
  out.ranks.resize(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) out.ranks[order[k]] = rank;
    const double t = static_cast<double>(j - i + 1);
    out.tie_term += t * t * t - t;
    i = j + 1;
  }
  return out;
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

/// Regularized lower incomplete gamma P(a, x) by series expansion (x < a+1).
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 500; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

/// Regularized upper incomplete gamma Q(a, x) by modified Lentz continued
/// fraction (x >= a+1).
double gamma_q_fraction(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q domain");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

}  // namespace

double approximation_ratio(double fval, double fval_min) {
  if (!(fval_min > 0.0))
    throw std::invalid_argument("approximation ratio needs a positive minimum");
  return fval / fval_min;
}

MwuResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("both samples must be non-empty");
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const Ranked ranked = midranks(pooled);

  double rank_a = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) rank_a += ranked.ranks[i];
  const double u_a = rank_a - 0.5 * n1 * (n1 + 1.0);
  const double u_b = n1 * n2 - u_a;
  const double u = std::min(u_a, u_b);

  const double total = n1 + n2;
  const double mean = 0.5 * n1 * n2;
  const double variance =
      n1 * n2 / 12.0 *
      (total + 1.0 - ranked.tie_term / (total * (total - 1.0)));
  if (!(variance > 0.0)) return {u, 1.0};

  const double z =
      std::max(0.0, std::abs(u - mean) - 0.5) / std::sqrt(variance);
  return {u, std::min(1.0, 2.0 * normal_sf(z))};
}

double a12(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("both samples must be non-empty");
  long wins2 = 0;  // 2 * wins + ties, kept integral for exact identities
  for (double x : a)
    for (double y : b) {
      if (x > y) wins2 += 2;
      else if (x == y) wins2 += 1;
    }
  return static_cast<double>(wins2) /
         (2.0 * static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

KwResult kruskal_wallis(std::span<const std::vector<double>> groups) {
  if (groups.size() < 2)
    throw std::invalid_argument("need at least two groups");
  std::vector<double> pooled;
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("groups must be non-empty");
    pooled.insert(pooled.end(), g.begin(), g.end());
  }
  const double total = static_cast<double>(pooled.size());
  const Ranked ranked = midranks(pooled);

  double h = 0.0;
  std::size_t offset = 0;
  for (const auto& g : groups) {
    double rank_sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      rank_sum += ranked.ranks[offset + i];
    offset += g.size();
    h += rank_sum * rank_sum / static_cast<double>(g.size());
  }
  h = 12.0 / (total * (total + 1.0)) * h - 3.0 * (total + 1.0);

  const double correction =
      1.0 - ranked.tie_term / (total * total * total - total);
  if (!(correction > 0.0)) return {0.0, 1.0};  // every value tied
  h /= correction;
  return {h, chi_squared_sf(h, static_cast<int>(groups.size()) - 1)};
}

double chi_squared_sf(double x, int dof) {
  if (dof < 1) throw std::invalid_argument("degrees of freedom must be >= 1");
  if (x <= 0.0) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * x);
}

ComparisonReport compare_groups(
    const std::vector<std::pair<std::string, std::vector<double>>>& groups) {
  if (groups.size() < 2)
    throw std::invalid_argument(
        "comparison needs at least two groups; got " +
        std::to_string(groups.size()));
  std::vector<std::vector<double>> samples;
  for (const auto& [name, values] : groups) samples.push_back(values);

  ComparisonReport report;
  report.kw = kruskal_wallis(samples);
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      const MwuResult mwu = mann_whitney_u(groups[i].second, groups[j].second);
      report.pairwise.push_back({groups[i].first, groups[j].first, mwu.u,
                                 mwu.p, a12(groups[i].second, groups[j].second)});
    }
  return report;
}

}  // namespace tcoq::stats
