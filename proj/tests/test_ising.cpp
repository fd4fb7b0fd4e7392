#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "tcoq/ising.hpp"

using namespace tcoq;

namespace {

// Independent reference implementation of the objective, computed straight
// from the definition without touching the library's evaluation code. Also
// replicates the construction rules (weight normalization, appended size
// group at the mean input weight) so it can be driven from raw inputs.
struct RawGroup {
  bool cost;
  std::vector<double> values;
  double weight;
};

double oracle_value(std::vector<RawGroup> gs, bool minimize_size,
                    const std::vector<spin_t>& z) {
  if (minimize_size) {
    double mean = 0.0;
    for (const auto& g : gs) mean += g.weight;
    mean = gs.empty() ? 1.0 : mean / static_cast<double>(gs.size());
    gs.push_back({true, std::vector<double>(z.size(), 1.0), mean});
  }
  double wsum = 0.0;
  for (const auto& g : gs) wsum += g.weight;
  double total = 0.0;
  for (const auto& g : gs) {
    double vsum = 0.0, dot = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      vsum += g.values[i];
      dot += g.values[i] * static_cast<double>(z[i]);
    }
    const double f = g.cost ? 0.5 * (1.0 - dot / vsum) : 0.5 * (1.0 + dot / vsum);
    total += (g.weight / wsum) * f * f;
  }
  return total;
}

// The three-test example: failure rates 0.5/0.7/0.8, durations 3/6/1,
// minimized suite size. All groups end up weighted 1/3.
ProblemSpec example_spec() {
  return ProblemSpec::create(
      3,
      {{GroupKind::Effectiveness, {0.5, 0.7, 0.8}, 1.0},
       {GroupKind::Cost, {3.0, 6.0, 1.0}, 1.0}},
      true);
}

std::vector<RawGroup> example_raw() {
  return {{false, {0.5, 0.7, 0.8}, 1.0}, {true, {3.0, 6.0, 1.0}, 1.0}};
}

ProblemSpec random_spec(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> group_count(1, 3);
  const int eff = group_count(gen);
  const int cost = group_count(gen) - 1;
  const bool tcm = cost == 0 || unit(gen) < 0.5;
  std::vector<AttributeGroup> groups;
  for (int g = 0; g < eff + cost; ++g) {
    AttributeGroup grp;
    grp.kind = g < eff ? GroupKind::Effectiveness : GroupKind::Cost;
    grp.weight = 0.25 + unit(gen);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      double v = unit(gen) < 0.2 ? 0.0 : unit(gen) * 10.0;
      grp.values.push_back(v);
      any = any || v > 0.0;
    }
    // 1.5, not 1.0: an accidental all-ones cost group would collide with the
    // unit group that minimize_size appends.
    if (!any) grp.values[0] = 1.5;
    groups.push_back(std::move(grp));
  }
  return ProblemSpec::create(n, std::move(groups), tcm);
}

std::vector<spin_t> spins_of(std::uint64_t x, std::size_t n) {
  std::vector<spin_t> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = (x >> i) & 1 ? 1 : -1;
  return z;
}

}  // namespace

TEST_CASE("direct evaluation matches hand-computed example values") {
  const auto spec = example_spec();
  const std::vector<spin_t> all_plus{1, 1, 1};
  const std::vector<spin_t> all_minus{-1, -1, -1};
  const std::vector<spin_t> best{1, 1, -1};
  // all dropped: f_eff = 1, f_cost = f_size = 0
  CHECK(evaluate_direct(spec, all_plus) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // all selected: f_eff = 0, f_cost = f_size = 1
  CHECK(evaluate_direct(spec, all_minus) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // selecting only the third test is the global minimum
  CHECK(evaluate_direct(spec, best) == doctest::Approx(0.16037037037).epsilon(1e-9));
}

TEST_CASE("direct evaluation agrees with the independent oracle on the example") {
  const auto spec = example_spec();
  for (std::uint64_t x = 0; x < 8; ++x) {
    const auto z = spins_of(x, 3);
    CHECK(evaluate_direct(spec, z) ==
          doctest::Approx(oracle_value(example_raw(), true, z)).epsilon(1e-13));
  }
}

TEST_CASE("expansion reproduces the worked example coefficients") {
  const auto form = expand(example_spec());
  // The reference matrix prints these to 3 decimals (0.063, 0.040, 0.052,
  // -0.064, -0.097); the exact values below come from symbolic expansion.
  CHECK(form.pair_coefficient(0, 1) == doctest::Approx(0.063102).epsilon(1e-4));
  CHECK(form.pair_coefficient(0, 2) == doctest::Approx(0.040185).epsilon(1e-4));
  CHECK(form.pair_coefficient(1, 2) == doctest::Approx(0.051852).epsilon(1e-4));
  CHECK(form.linear()[0] == doctest::Approx(-0.063889).epsilon(1e-4));
  CHECK(form.linear()[1] == doctest::Approx(-0.097222).epsilon(1e-4));
  // Y_2: -1/180. The reference matrix prints -0.0069 here, inconsistent with
  // its own other entries; the expansion value is authoritative.
  CHECK(form.linear()[2] == doctest::Approx(-1.0 / 180.0).epsilon(1e-9));
  CHECK(form.constant() == doctest::Approx(0.34486111).epsilon(1e-8));
}

TEST_CASE("reference coefficients hold within print precision") {
  const auto form = expand(example_spec());
  CHECK(std::abs(form.pair_coefficient(0, 1) - 0.063) < 0.0015);
  CHECK(std::abs(form.pair_coefficient(0, 2) - 0.040) < 0.0015);
  CHECK(std::abs(form.pair_coefficient(1, 2) - 0.052) < 0.0015);
  CHECK(std::abs(form.linear()[0] - -0.064) < 0.0015);
  CHECK(std::abs(form.linear()[1] - -0.097) < 0.0015);
}

TEST_CASE("expansion equals direct evaluation exhaustively on random instances") {
  std::mt19937_64 gen(20240816);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = size(gen);
    const auto spec = random_spec(gen, n);
    const auto form = expand(spec);
    for (std::uint64_t x = 0; x < (1ull << n); ++x) {
      const auto z = spins_of(x, n);
      const double direct = evaluate_direct(spec, z);
      const double quad = quadratic_value(form, z, true);
      REQUIRE(std::abs(quad - direct) <= 1e-12);
    }
  }
}

TEST_CASE("objective range and scale invariance") {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(unit(gen) * 10);
    const auto spec = random_spec(gen, n);
    // scaled copy: one group's values multiplied by an arbitrary constant
    auto groups = spec.groups();
    for (auto& v : groups[0].values) v *= 37.5;
    const auto scaled = ProblemSpec::create(n, groups, false);
    for (std::uint64_t x = 0; x < (1ull << n); ++x) {
      const auto z = spins_of(x, n);
      const double v = evaluate_direct(spec, z);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0 + 1e-12);
      CHECK(evaluate_direct(scaled, z) == doctest::Approx(v).epsilon(1e-12));
    }
  }
}

TEST_CASE("construction validates inputs") {
  CHECK_THROWS(ProblemSpec::create(0, {{GroupKind::Cost, {}, 1.0}}, false));
  CHECK_THROWS(ProblemSpec::create(2, {}, false));
  // zero attribute sum
  CHECK_THROWS(ProblemSpec::create(2, {{GroupKind::Cost, {0.0, 0.0}, 1.0}}, false));
  // wrong length
  CHECK_THROWS(ProblemSpec::create(3, {{GroupKind::Cost, {1.0, 2.0}, 1.0}}, false));
  // non-positive weight
  CHECK_THROWS(ProblemSpec::create(2, {{GroupKind::Cost, {1.0, 1.0}, 0.0}}, false));
  CHECK_THROWS(ProblemSpec::create(2, {{GroupKind::Cost, {1.0, 1.0}, -2.0}}, false));
  // negative attribute value
  CHECK_THROWS(ProblemSpec::create(2, {{GroupKind::Cost, {1.0, -0.5}, 1.0}}, false));
  // size-only minimization is allowed
  CHECK_NOTHROW(ProblemSpec::create(2, {}, true));
}

TEST_CASE("minimize_size appends exactly one unit cost group and normalizes weights") {
  const auto spec = example_spec();
  REQUIRE(spec.groups().size() == 3);
  CHECK(spec.minimize_size());
  CHECK(spec.effectiveness_count() == 1);
  double wsum = 0.0;
  int unit_groups = 0;
  for (const auto& g : spec.groups()) {
    wsum += g.weight;
    CHECK(g.weight == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    bool all_one = g.kind == GroupKind::Cost;
    for (double v : g.values) all_one = all_one && v == 1.0;
    unit_groups += all_one;
  }
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(unit_groups == 1);
}

TEST_CASE("weight normalization preserves ratios") {
  const auto spec = ProblemSpec::create(
      2,
      {{GroupKind::Effectiveness, {1.0, 2.0}, 0.7},
       {GroupKind::Cost, {1.0, 1.0}, 0.35}},
      false);
  CHECK(spec.groups()[0].weight ==
        doctest::Approx(2.0 * spec.groups()[1].weight).epsilon(1e-12));
  CHECK(spec.groups()[0].weight + spec.groups()[1].weight ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quadratic_value basics") {
  const QuadraticForm zero(3, {}, {0.0, 0.0, 0.0}, 0.0);
  const std::vector<spin_t> z{1, -1, 1};
  CHECK(quadratic_value(zero, z, true) == 0.0);

  const auto form = expand(example_spec());
  double coeff_sum = form.constant();
  for (const auto& p : form.pairs()) coeff_sum += p.coeff;
  for (double y : form.linear()) coeff_sum += y;
  const std::vector<spin_t> plus{1, 1, 1};
  CHECK(quadratic_value(form, plus, true) ==
        doctest::Approx(coeff_sum).epsilon(1e-12));

  const std::vector<spin_t> best{1, 1, -1};
  CHECK(quadratic_value(form, best, true) ==
        doctest::Approx(0.16037037037).epsilon(1e-9));
}

TEST_CASE("quadratic form validation and sparse storage") {
  CHECK_THROWS(QuadraticForm(2, {{0, 0, 1.0}}, {0.0, 0.0}, 0.0));  // i == j
  CHECK_THROWS(QuadraticForm(2, {{1, 0, 1.0}}, {0.0, 0.0}, 0.0));  // i > j
  CHECK_THROWS(QuadraticForm(2, {{0, 2, 1.0}}, {0.0, 0.0}, 0.0));  // j out of range
  CHECK_THROWS(QuadraticForm(3, {{0, 1, 1.0}, {0, 1, 2.0}}, {0.0, 0.0, 0.0}, 0.0));
  CHECK_THROWS(QuadraticForm(2, {}, {0.0}, 0.0));  // linear length mismatch

  const QuadraticForm f(3, {{0, 1, 0.0}, {0, 2, 2.5}}, {1.0, 0.0, -1.0}, 0.5);
  CHECK(f.pairs().size() == 1);  // exact zero dropped
  CHECK(f.pair_coefficient(0, 1) == 0.0);
  CHECK(f.pair_coefficient(0, 2) == 2.5);
  CHECK(f.pair_coefficient(2, 0) == 2.5);  // symmetric lookup
  CHECK(f.neighbors(2).size() == 1);
  CHECK(f.neighbors(2)[0].index == 0);
  CHECK(f.neighbors(1).empty());
}

TEST_CASE("clamp folds fixed spins into the linear part") {
  const auto form = expand(example_spec());
  std::vector<std::uint32_t> active{0, 1};
  std::vector<spin_t> fixed{0, 0, -1};  // entries at active positions ignored
  const auto sub = clamp(form, active, fixed);
  REQUIRE(sub.size() == 2);
  // Y_0' = Y_0 + X_02 * z_2 = -0.063889 - 0.040185
  CHECK(sub.linear()[0] == doctest::Approx(-0.1040741).epsilon(1e-6));
  CHECK(sub.linear()[1] == doctest::Approx(-0.0972222 - 0.0518519).epsilon(1e-6));
  CHECK(sub.pair_coefficient(0, 1) == doctest::Approx(0.063102).epsilon(1e-5));
  CHECK(sub.constant() == 0.0);
}

TEST_CASE("clamping all variables reproduces the form without its constant") {
  const auto form = expand(example_spec());
  std::vector<std::uint32_t> active{0, 1, 2};
  std::vector<spin_t> fixed{1, 1, 1};
  const auto sub = clamp(form, active, fixed);
  for (std::uint64_t x = 0; x < 8; ++x) {
    const auto z = spins_of(x, 3);
    CHECK(quadratic_value(sub, z, true) ==
          doctest::Approx(quadratic_value(form, z, false)).epsilon(1e-12));
  }
}

TEST_CASE("clamp difference is constant over all completions") {
  std::mt19937_64 gen(555);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 6 + static_cast<std::size_t>(unit(gen) * 6);
    const auto form = expand(random_spec(gen, n));
    // random active subset of size <= 8
    std::vector<std::uint32_t> active;
    for (std::uint32_t i = 0; i < n && active.size() < 8; ++i)
      if (unit(gen) < 0.5) active.push_back(i);
    if (active.empty()) active.push_back(0);
    std::vector<spin_t> fixed(n);
    for (auto& s : fixed) s = unit(gen) < 0.5 ? -1 : 1;

    const auto sub = clamp(form, active, fixed);
    double expected_gap = 0.0;
    for (std::uint64_t x = 0; x < (1ull << active.size()); ++x) {
      auto merged = fixed;
      std::vector<spin_t> a(active.size());
      for (std::size_t k = 0; k < active.size(); ++k) {
        a[k] = (x >> k) & 1 ? 1 : -1;
        merged[active[k]] = a[k];
      }
      const double gap = quadratic_value(form, merged, false) -
                         quadratic_value(sub, a, true);
      if (x == 0) expected_gap = gap;
      REQUIRE(std::abs(gap - expected_gap) <= 1e-12);
    }
  }
}

TEST_CASE("clamp rejects bad active sets") {
  const auto form = expand(example_spec());
  std::vector<spin_t> fixed{1, 1, 1};
  CHECK_THROWS(clamp(form, {}, fixed));
  std::vector<std::uint32_t> dup{0, 0};
  CHECK_THROWS(clamp(form, dup, fixed));
  std::vector<std::uint32_t> oor{0, 3};
  CHECK_THROWS(clamp(form, oor, fixed));
}

TEST_CASE("impact order on the worked example") {
  const auto form = expand(example_spec());
  const std::vector<spin_t> z{1, 1, 1};
  const double fval = quadratic_value(form, z, true);
  const auto impacts = impact_order(form, z, fval);
  REQUIRE(impacts.size() == 3);
  // flipping tc2 helps most, then tc0, then tc1
  CHECK(impacts[0].index == 2);
  CHECK(impacts[1].index == 0);
  CHECK(impacts[2].index == 1);
  CHECK(impacts[0].delta == doctest::Approx(-0.1729630).epsilon(1e-6));
  CHECK(impacts[1].delta == doctest::Approx(-0.0787963).epsilon(1e-6));
  CHECK(impacts[2].delta == doctest::Approx(-0.0354630).epsilon(1e-6));
}

TEST_CASE("impact deltas equal slow re-evaluation") {
  std::mt19937_64 gen(909);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(unit(gen) * 62);
    const auto form = expand(random_spec(gen, n));
    std::vector<spin_t> z(n);
    for (auto& s : z) s = unit(gen) < 0.5 ? -1 : 1;
    const double fval = quadratic_value(form, z, true);
    const auto impacts = impact_order(form, z, fval);
    REQUIRE(impacts.size() == n);
    for (const auto& im : impacts) {
      auto flipped = z;
      flipped[im.index] = static_cast<spin_t>(-flipped[im.index]);
      const double slow = quadratic_value(form, flipped, true) - fval;
      REQUIRE(im.delta == doctest::Approx(slow).epsilon(1e-10));
    }
    // sorted ascending
    for (std::size_t k = 1; k < impacts.size(); ++k)
      REQUIRE(impacts[k - 1].delta <= impacts[k].delta + 1e-15);
  }
}

TEST_CASE("impact ties break by ascending index") {
  // identical attributes for every test case make all impacts equal
  const auto spec = ProblemSpec::create(
      5, {{GroupKind::Effectiveness, {2.0, 2.0, 2.0, 2.0, 2.0}, 1.0}}, true);
  const auto form = expand(spec);
  const std::vector<spin_t> z{1, 1, 1, 1, 1};
  const auto impacts = impact_order(form, z, quadratic_value(form, z, true));
  for (std::size_t k = 0; k < impacts.size(); ++k) {
    CHECK(impacts[k].index == k);
    CHECK(impacts[k].delta == doctest::Approx(impacts[0].delta).epsilon(1e-12));
  }
}

TEST_CASE("applying the best flip changes fval by exactly its delta") {
  std::mt19937_64 gen(4242);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(unit(gen) * 9);
    const auto form = expand(random_spec(gen, n));
    std::vector<spin_t> z(n);
    for (auto& s : z) s = unit(gen) < 0.5 ? -1 : 1;
    const double fval = quadratic_value(form, z, true);
    const auto impacts = impact_order(form, z, fval);
    auto flipped = z;
    flipped[impacts[0].index] = static_cast<spin_t>(-flipped[impacts[0].index]);
    CHECK(quadratic_value(form, flipped, true) ==
          doctest::Approx(fval + impacts[0].delta).epsilon(1e-10));
  }
}

TEST_CASE("evaluation rejects dimension mismatches") {
  const auto spec = example_spec();
  const std::vector<spin_t> two{1, 1};
  CHECK_THROWS(evaluate_direct(spec, two));
  const auto form = expand(spec);
  CHECK_THROWS(quadratic_value(form, two, true));
  const std::vector<spin_t> four{1, 1, 1, 1};
  CHECK_THROWS(quadratic_value(form, four, false));
}
