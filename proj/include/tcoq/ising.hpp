#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tcoq {

/// Spin variable. -1 means the test case is selected, +1 means dropped.
using spin_t = std::int8_t;

enum class GroupKind { Effectiveness, Cost };

/// One objective group: a per-test-case attribute column plus its weight.
/// Values may be in arbitrary units; the objective normalizes each group by
/// the sum of its values, so only the relative magnitudes matter.
struct AttributeGroup {
  GroupKind kind{GroupKind::Effectiveness};
  std::vector<double> values;
  double weight{1.0};
};

/// A test-case selection (or minimization) instance: n test cases described
/// by weighted attribute groups. Effectiveness groups reward keeping mass in
/// the selected subset, cost groups reward leaving it out.
///
/// Construction validates and normalizes: group weights are scaled to sum to
/// one, effectiveness groups are stored before cost groups, and when
/// minimize_size is set a unit-valued cost group (the subset-size objective)
/// is appended. The appended group gets the mean of the supplied weights, so
/// an equally weighted problem stays equally weighted after the append.
class ProblemSpec {
 public:
  static ProblemSpec create(std::size_t n, std::vector<AttributeGroup> groups,
                            bool minimize_size);

  std::size_t size() const { return n_; }
  const std::vector<AttributeGroup>& groups() const { return groups_; }
  bool minimize_size() const { return minimize_size_; }
  std::size_t effectiveness_count() const { return eff_count_; }
  std::size_t cost_count() const { return groups_.size() - eff_count_; }

  /// Sum of the values of group g (always > 0).
  double group_sum(std::size_t g) const { return sums_[g]; }

 private:
  ProblemSpec() = default;

  std::size_t n_{0};
  std::vector<AttributeGroup> groups_;
  std::vector<double> sums_;
  std::size_t eff_count_{0};
  bool minimize_size_{false};
};

/// Objective value of an assignment, computed straight from the definition:
/// sum over groups of weight * f^2 with f = (1 +- sum(v_i z_i)/sum(v_i)) / 2.
/// Result lies in [0, 1]. Lower is better.
double evaluate_direct(const ProblemSpec& spec, std::span<const spin_t> z);

/// One pair coefficient of a quadratic form, with i < j.
struct PairTerm {
  std::uint32_t i;
  std::uint32_t j;
  double coeff;
};

/// Neighbor entry of the adjacency view of a quadratic form.
struct Neighbor {
  std::uint32_t index;
  double coeff;
};

/// Quadratic pseudo-Boolean function over spins:
///   F(z) = sum_{i<j} X_ij z_i z_j + sum_i Y_i z_i + C.
/// Pair terms are stored sparsely; exact zeros are dropped at construction.
class QuadraticForm {
 public:
  QuadraticForm(std::size_t n, std::vector<PairTerm> pairs,
                std::vector<double> linear, double constant);

  std::size_t size() const { return n_; }
  double constant() const { return constant_; }
  std::span<const double> linear() const { return linear_; }
  std::span<const PairTerm> pairs() const { return pairs_; }

  /// Coefficient X_ij in either index order; 0 when the pair is absent.
  double pair_coefficient(std::uint32_t i, std::uint32_t j) const;

  /// All stored pairs involving variable i, as (other index, coefficient).
  std::span<const Neighbor> neighbors(std::uint32_t i) const;

 private:
  std::size_t n_;
  std::vector<PairTerm> pairs_;
  std::vector<double> linear_;
  double constant_;
  std::vector<std::size_t> adj_offsets_;
  std::vector<Neighbor> adj_;
};

/// Exact quadratic expansion of the objective. For every assignment,
/// quadratic_value(expand(spec), z, true) == evaluate_direct(spec, z) up to
/// floating-point roundoff. Each group contributes positively to every pair
/// coefficient; the sign of the group only shows up in the linear part.
QuadraticForm expand(const ProblemSpec& spec);

double quadratic_value(const QuadraticForm& form, std::span<const spin_t> z,
                       bool include_constant);

/// Sub-problem extraction: restrict the form to the active variables, with
/// every inactive variable frozen at its value in fixed_z. Cross couplings
/// fold into the linear part of the sub-form; the constant is dropped.
/// Local variable k of the result corresponds to active[k].
QuadraticForm clamp(const QuadraticForm& form,
                    std::span<const std::uint32_t> active,
                    std::span<const spin_t> fixed_z);

/// Single-flip impact of one variable: objective(z with z_k flipped) minus
/// objective(z).
struct Impact {
  std::uint32_t index;
  double delta;
};

/// Impacts of all variables at z, sorted ascending by delta (most beneficial
/// flip first), ties broken by ascending index. fval must be the objective
/// value at z; the deltas are computed incrementally and are consistent with
/// it.
std::vector<Impact> impact_order(const QuadraticForm& form,
                                 std::span<const spin_t> z, double fval);

/// An assignment together with its cached objective value.
struct Assignment {
  std::vector<spin_t> z;
  double fval{0.0};
};

}  // namespace tcoq
