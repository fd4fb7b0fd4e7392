#include "tcoq/ising.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tcoq {

namespace {

void check_spins(std::size_t n, std::span<const spin_t> z) {
  if (z.size() != n)
    throw std::invalid_argument("assignment has " + std::to_string(z.size()) +
                                " spins, expected " + std::to_string(n));
  for ([[maybe_unused]] spin_t s : z) assert(s == 1 || s == -1);
}

}  // namespace

ProblemSpec ProblemSpec::create(std::size_t n,
                                std::vector<AttributeGroup> groups,
                                bool minimize_size) {
  if (n == 0) throw std::invalid_argument("problem needs at least one test case");
  if (groups.empty() && !minimize_size)
    throw std::invalid_argument("problem needs at least one attribute group");

  if (minimize_size) {
    AttributeGroup size_group;
    size_group.kind = GroupKind::Cost;
    size_group.values.assign(n, 1.0);
    size_group.weight = 1.0;
    if (!groups.empty()) {
      double mean = 0.0;
      for (const auto& g : groups) mean += g.weight;
      size_group.weight = mean / static_cast<double>(groups.size());
    }
    groups.push_back(std::move(size_group));
  }

  ProblemSpec spec;
  spec.n_ = n;
  spec.minimize_size_ = minimize_size;

  std::stable_partition(groups.begin(), groups.end(), [](const AttributeGroup& g) {
    return g.kind == GroupKind::Effectiveness;
  });

  double weight_total = 0.0;
  std::size_t unit_cost_groups = 0;
  for (const auto& g : groups) {
    if (g.values.size() != n)
      throw std::invalid_argument("attribute group has " +
                                  std::to_string(g.values.size()) +
                                  " values, expected " + std::to_string(n));
    if (!(g.weight > 0.0) || !std::isfinite(g.weight))
      throw std::invalid_argument("group weight must be positive and finite");
    double sum = 0.0;
    bool all_one = true;
    for (double v : g.values) {
      if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("attribute values must be finite and non-negative");
      sum += v;
      all_one = all_one && v == 1.0;
    }
    if (!(sum > 0.0))
      throw std::invalid_argument("attribute group sums to zero; cannot normalize");
    if (g.kind == GroupKind::Effectiveness) ++spec.eff_count_;
    if (g.kind == GroupKind::Cost && all_one) ++unit_cost_groups;
    spec.sums_.push_back(sum);
    weight_total += g.weight;
  }
  if (minimize_size && unit_cost_groups != 1)
    throw std::invalid_argument(
        "size-minimizing problems must have exactly one unit-valued cost group");

  for (auto& g : groups) g.weight /= weight_total;
  spec.groups_ = std::move(groups);
  return spec;
}

double evaluate_direct(const ProblemSpec& spec, std::span<const spin_t> z) {
  check_spins(spec.size(), z);
  double total = 0.0;
  for (std::size_t g = 0; g < spec.groups().size(); ++g) {
    const AttributeGroup& grp = spec.groups()[g];
    double s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
      s += grp.values[i] * static_cast<double>(z[i]);
    s /= spec.group_sum(g);
    const double f = grp.kind == GroupKind::Effectiveness ? 0.5 * (1.0 + s)
                                                          : 0.5 * (1.0 - s);
    total += grp.weight * f * f;
  }
  return total;
}

QuadraticForm::QuadraticForm(std::size_t n, std::vector<PairTerm> pairs,
                             std::vector<double> linear, double constant)
    : n_(n), linear_(std::move(linear)), constant_(constant) {
  if (linear_.size() != n_)
    throw std::invalid_argument("linear coefficient count must equal n");
  pairs_.reserve(pairs.size());
  for (const PairTerm& t : pairs) {
    if (t.i >= t.j || t.j >= n_)
      throw std::invalid_argument("pair term indices must satisfy i < j < n");
    if (t.coeff != 0.0) pairs_.push_back(t);
  }
  std::sort(pairs_.begin(), pairs_.end(), [](const PairTerm& a, const PairTerm& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (std::size_t k = 1; k < pairs_.size(); ++k)
    if (pairs_[k - 1].i == pairs_[k].i && pairs_[k - 1].j == pairs_[k].j)
      throw std::invalid_argument("duplicate pair term");

  std::vector<std::size_t> degree(n_, 0);
  for (const PairTerm& t : pairs_) {
    ++degree[t.i];
    ++degree[t.j];
  }
  adj_offsets_.assign(n_ + 1, 0);
  for (std::size_t i = 0; i < n_; ++i)
    adj_offsets_[i + 1] = adj_offsets_[i] + degree[i];
  adj_.resize(adj_offsets_[n_]);
  std::vector<std::size_t> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (const PairTerm& t : pairs_) {
    adj_[cursor[t.i]++] = {t.j, t.coeff};
    adj_[cursor[t.j]++] = {t.i, t.coeff};
  }
}

double QuadraticForm::pair_coefficient(std::uint32_t i, std::uint32_t j) const {
  if (i == j || i >= n_ || j >= n_)
    throw std::invalid_argument("pair_coefficient needs two distinct variables");
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::make_pair(i, j),
                             [](const PairTerm& t, const std::pair<std::uint32_t, std::uint32_t>& k) {
                               return t.i != k.first ? t.i < k.first : t.j < k.second;
                             });
  if (it != pairs_.end() && it->i == i && it->j == j) return it->coeff;
  return 0.0;
}

std::span<const Neighbor> QuadraticForm::neighbors(std::uint32_t i) const {
  return {adj_.data() + adj_offsets_[i], adj_offsets_[i + 1] - adj_offsets_[i]};
}

QuadraticForm expand(const ProblemSpec& spec) {
  const std::size_t n = spec.size();
  const std::size_t m = spec.groups().size();

  // Per-group normalized values a_gi = v_gi / sum_g. Expanding w (1 +- sum_i
  // a_i z_i)^2 / 4 gives, for every group regardless of kind,
  //   X_ij += w/2 a_i a_j,   C += w/4 (1 + sum_i a_i^2),
  // and only the linear part carries the group sign:
  //   Y_i += (+-) w/2 a_i.
  std::vector<std::vector<double>> norm(m);
  std::vector<double> linear(n, 0.0);
  double constant = 0.0;
  for (std::size_t g = 0; g < m; ++g) {
    const AttributeGroup& grp = spec.groups()[g];
    const double w = grp.weight;
    const double sum = spec.group_sum(g);
    const double sign = grp.kind == GroupKind::Effectiveness ? 1.0 : -1.0;
    norm[g].resize(n);
    double sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = grp.values[i] / sum;
      norm[g][i] = a;
      linear[i] += sign * 0.5 * w * a;
      sq += a * a;
    }
    constant += 0.25 * w * (1.0 + sq);
  }

  std::vector<PairTerm> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::uint32_t i = 0; i + 1 < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      double x = 0.0;
      for (std::size_t g = 0; g < m; ++g)
        x += 0.5 * spec.groups()[g].weight * norm[g][i] * norm[g][j];
      if (x != 0.0) pairs.push_back({i, j, x});
    }
  }
  return QuadraticForm(n, std::move(pairs), std::move(linear), constant);
}

double quadratic_value(const QuadraticForm& form, std::span<const spin_t> z,
                       bool include_constant) {
  check_spins(form.size(), z);
  double total = 0.0;
  for (const PairTerm& t : form.pairs())
    total += t.coeff * static_cast<double>(z[t.i] * z[t.j]);
  for (std::size_t i = 0; i < form.size(); ++i)
    total += form.linear()[i] * static_cast<double>(z[i]);
  if (include_constant) total += form.constant();
  return total;
}

QuadraticForm clamp(const QuadraticForm& form,
                    std::span<const std::uint32_t> active,
                    std::span<const spin_t> fixed_z) {
  check_spins(form.size(), fixed_z);
  if (active.empty()) throw std::invalid_argument("active set must not be empty");

  constexpr std::uint32_t kInactive = ~std::uint32_t{0};
  std::vector<std::uint32_t> local(form.size(), kInactive);
  for (std::size_t k = 0; k < active.size(); ++k) {
    if (active[k] >= form.size())
      throw std::invalid_argument("active index out of range");
    if (local[active[k]] != kInactive)
      throw std::invalid_argument("active indices must be distinct");
    local[active[k]] = static_cast<std::uint32_t>(k);
  }

  std::vector<double> linear(active.size());
  std::vector<PairTerm> pairs;
  for (std::size_t k = 0; k < active.size(); ++k) {
    const std::uint32_t v = active[k];
    double y = form.linear()[v];
    for (const Neighbor& nb : form.neighbors(v)) {
      if (local[nb.index] == kInactive) {
        y += nb.coeff * static_cast<double>(fixed_z[nb.index]);
      } else if (v < nb.index) {
        const auto a = static_cast<std::uint32_t>(k);
        const auto b = local[nb.index];
        pairs.push_back({std::min(a, b), std::max(a, b), nb.coeff});
      }
    }
    linear[k] = y;
  }
  return QuadraticForm(active.size(), std::move(pairs), std::move(linear), 0.0);
}

std::vector<Impact> impact_order(const QuadraticForm& form,
                                 std::span<const spin_t> z, double fval) {
  check_spins(form.size(), z);
  assert(std::abs(quadratic_value(form, z, true) - fval) <=
         1e-9 * (1.0 + std::abs(fval)));
  (void)fval;

  std::vector<Impact> impacts(form.size());
  for (std::uint32_t k = 0; k < form.size(); ++k) {
    double coupling = form.linear()[k];
    for (const Neighbor& nb : form.neighbors(k))
      coupling += nb.coeff * static_cast<double>(z[nb.index]);
    impacts[k] = {k, -2.0 * static_cast<double>(z[k]) * coupling};
  }
  std::sort(impacts.begin(), impacts.end(), [](const Impact& a, const Impact& b) {
    return a.delta != b.delta ? a.delta < b.delta : a.index < b.index;
  });
  return impacts;
}

}  // namespace tcoq
