#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "dense_oracle.hpp"
#include "tcoq/ising.hpp"
#include "tcoq/rng.hpp"
#include "tcoq/statevector.hpp"

using namespace tcoq;
using qsim::DiagonalEnergy;
using qsim::StateVector;

namespace {

QuadraticForm random_form(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<PairTerm> pairs;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      pairs.push_back({i, j, coeff(gen)});
  std::vector<double> linear(n);
  for (auto& y : linear) y = coeff(gen);
  return QuadraticForm(n, std::move(pairs), std::move(linear), coeff(gen));
}

dense::Vector to_dense(const StateVector& s) {
  return dense::Vector(s.amplitudes().begin(), s.amplitudes().end());
}

// Phase separation circuit built gate by gate. Each pair term X z_i z_j is a
// CNOT / Rz(2 X gamma) / CNOT sandwich on the pair; each linear term Y z_j is
// Rz(-2 Y gamma) on its qubit, the sign fixed by the bit-0-is-spin-minus-one
// decoding.
dense::Vector dense_phase(const QuadraticForm& form, double gamma,
                          dense::Vector v) {
  const int n = static_cast<int>(form.size());
  for (const PairTerm& t : form.pairs()) {
    const auto cx = dense::cnot(n, static_cast<int>(t.i), static_cast<int>(t.j));
    v = dense::matvec(cx, v);
    v = dense::matvec(
        dense::single_qubit(n, static_cast<int>(t.j), dense::rz(2.0 * t.coeff * gamma)),
        v);
    v = dense::matvec(cx, v);
  }
  for (std::size_t j = 0; j < form.size(); ++j)
    v = dense::matvec(
        dense::single_qubit(n, static_cast<int>(j), dense::rz(-2.0 * form.linear()[j] * gamma)),
        v);
  return v;
}

dense::Vector dense_mixer(int n, double beta, dense::Vector v) {
  for (int q = 0; q < n; ++q)
    v = dense::matvec(dense::single_qubit(n, q, dense::rx(2.0 * beta)), v);
  return v;
}

}  // namespace

TEST_CASE("init_plus builds a uniform real superposition") {
  const auto state = qsim::init_plus(5);
  CHECK(state.num_qubits() == 5);
  REQUIRE(state.dim() == 32);
  const double expected = 1.0 / std::sqrt(32.0);
  for (const auto& a : state.amplitudes()) {
    CHECK(a.real() == doctest::Approx(expected).epsilon(1e-14));
    CHECK(a.imag() == 0.0);
  }
  CHECK(state.norm_sq() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("init_plus enforces the qubit ceiling") {
  CHECK_THROWS(qsim::init_plus(0));
  CHECK_THROWS(qsim::init_plus(qsim::kMaxQubits + 1));
  CHECK_THROWS(qsim::init_plus(5, 4));
  CHECK_THROWS(qsim::init_plus(5, qsim::kMaxQubits + 1));
  CHECK_NOTHROW(qsim::init_plus(5, 5));
}

TEST_CASE("norm is preserved across 100 random layers") {
  std::mt19937_64 gen(31415);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  const auto form = random_form(gen, 8);
  const DiagonalEnergy energy(form);
  auto state = qsim::init_plus(8);
  for (int layer = 0; layer < 100; ++layer) {
    qsim::apply_phase(state, energy, angle(gen));
    qsim::apply_mixer(state, angle(gen));
  }
  CHECK(std::abs(state.norm_sq() - 1.0) <= 1e-10);
}

TEST_CASE("diagonal energy matches quadratic_value with and without table") {
  std::mt19937_64 gen(2718);
  for (std::size_t n : {1, 2, 5, 9, 12}) {
    const auto form = random_form(gen, n);
    const DiagonalEnergy tabled(form);
    const DiagonalEnergy lazy(form, 0);
    CHECK(tabled.has_table());
    CHECK_FALSE(lazy.has_table());
    for (std::uint64_t x = 0; x < (1ull << n); ++x) {
      std::vector<spin_t> z(n);
      for (std::size_t i = 0; i < n; ++i) z[i] = (x >> i) & 1 ? 1 : -1;
      const double expected = quadratic_value(form, z, false);
      REQUIRE(tabled.value(x) == doctest::Approx(expected).epsilon(1e-12));
      REQUIRE(lazy.value(x) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("phase layer equals the explicit gate circuit") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> angle(-2.5, 2.5);
  for (int trial = 0; trial < 12; ++trial) {
    const auto form = random_form(gen, 3);
    const DiagonalEnergy energy(form);
    const double gamma = angle(gen);

    auto state = qsim::init_plus(3);
    qsim::apply_phase(state, energy, gamma);

    const auto expected = dense_phase(form, gamma, dense::plus_state(3));
    CHECK(dense::phase_aligned_distance(expected, to_dense(state)) <= 1e-10);
  }
}

TEST_CASE("mixer layer equals per-qubit Rx matrices") {
  std::mt19937_64 gen(100);
  std::uniform_real_distribution<double> angle(-2.5, 2.5);
  for (int trial = 0; trial < 12; ++trial) {
    const auto form = random_form(gen, 3);
    const double gamma = angle(gen), beta = angle(gen);

    auto state = qsim::init_plus(3);
    qsim::apply_phase(state, DiagonalEnergy(form), gamma);
    qsim::apply_mixer(state, beta);

    auto expected = dense_phase(form, gamma, dense::plus_state(3));
    expected = dense_mixer(3, beta, std::move(expected));
    CHECK(dense::phase_aligned_distance(expected, to_dense(state)) <= 1e-10);
  }
}

TEST_CASE("two full layers match the dense circuit") {
  std::mt19937_64 gen(101);
  std::uniform_real_distribution<double> angle(-2.0, 2.0);
  const auto form = random_form(gen, 3);
  const DiagonalEnergy energy(form);
  const double g1 = angle(gen), b1 = angle(gen);
  const double g2 = angle(gen), b2 = angle(gen);

  auto state = qsim::init_plus(3);
  qsim::apply_phase(state, energy, g1);
  qsim::apply_mixer(state, b1);
  qsim::apply_phase(state, energy, g2);
  qsim::apply_mixer(state, b2);

  auto expected = dense_phase(form, g1, dense::plus_state(3));
  expected = dense_mixer(3, b1, std::move(expected));
  expected = dense_phase(form, g2, std::move(expected));
  expected = dense_mixer(3, b2, std::move(expected));
  CHECK(dense::phase_aligned_distance(expected, to_dense(state)) <= 1e-10);
}

TEST_CASE("mixer angles compose additively") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> angle(-1.5, 1.5);
  const auto form = random_form(gen, 4);
  const double b1 = angle(gen), b2 = angle(gen);

  auto split = qsim::init_plus(4);
  qsim::apply_phase(split, DiagonalEnergy(form), 0.3);
  auto joint = split;
  qsim::apply_mixer(split, b1);
  qsim::apply_mixer(split, b2);
  qsim::apply_mixer(joint, b1 + b2);
  for (std::size_t x = 0; x < split.dim(); ++x)
    CHECK(std::abs(split.amplitudes()[x] - joint.amplitudes()[x]) <= 1e-12);
}

TEST_CASE("a half-pi mixer swaps basis populations") {
  // Rx(pi) is -iX on every qubit, so probability mass moves to the
  // complemented basis index.
  StateVector state(3, 8);
  state.amplitudes()[5] = {1.0, 0.0};
  qsim::apply_mixer(state, std::acos(-1.0) / 2.0);
  for (std::size_t x = 0; x < 8; ++x) {
    const double p = std::norm(state.amplitudes()[x]);
    CHECK(p == doctest::Approx(x == 2 ? 1.0 : 0.0).epsilon(1e-12));
  }
}

TEST_CASE("zero-angle layers leave the uniform expectation at zero") {
  // Every spin monomial averages to zero over the hypercube, so the plus
  // state has expectation exactly zero for any constant-free diagonal.
  std::mt19937_64 gen(65);
  for (std::size_t n : {2, 5, 10}) {
    const auto form = random_form(gen, n);
    const DiagonalEnergy energy(form);
    auto state = qsim::init_plus(static_cast<int>(n));
    qsim::apply_phase(state, energy, 0.0);
    qsim::apply_mixer(state, 0.0);
    CHECK(std::abs(qsim::expectation(state, energy)) <= 1e-10);
  }
}

TEST_CASE("expectation on a basis state is the diagonal entry") {
  std::mt19937_64 gen(66);
  const auto form = random_form(gen, 4);
  const DiagonalEnergy energy(form);
  for (std::uint64_t x : {0ull, 3ull, 9ull, 15ull}) {
    StateVector state(4, 16);
    state.amplitudes()[x] = {0.0, 1.0};  // arbitrary phase must not matter
    CHECK(qsim::expectation(state, energy) ==
          doctest::Approx(energy.value(x)).epsilon(1e-12));
  }
}

TEST_CASE("expectation rejects mismatched sizes") {
  std::mt19937_64 gen(67);
  const DiagonalEnergy energy(random_form(gen, 3));
  auto state = qsim::init_plus(4);
  CHECK_THROWS(qsim::expectation(state, energy));
  CHECK_THROWS(qsim::apply_phase(state, energy, 0.1));
}

TEST_CASE("sampling is deterministic for a fixed seed") {
  auto state = qsim::init_plus(6);
  qsim::apply_mixer(state, 0.4);
  Rng a(123456), b(123456);
  const auto first = qsim::sample(state, 500, a);
  const auto second = qsim::sample(state, 500, b);
  REQUIRE(first.size() == 500);
  CHECK(first == second);
  for (auto x : first) CHECK(x < state.dim());
}

TEST_CASE("sampling a basis state always returns it") {
  StateVector state(3, 8);
  state.amplitudes()[6] = {0.0, -1.0};
  Rng rng(9);
  for (auto x : qsim::sample(state, 64, rng)) CHECK(x == 6);
}

TEST_CASE("sampling the plus state is uniform within tolerance") {
  const auto state = qsim::init_plus(2);
  Rng rng(20240816);
  std::array<std::size_t, 4> counts{};
  for (auto x : qsim::sample(state, 40000, rng)) ++counts[x];
  for (auto c : counts)
    CHECK(std::abs(static_cast<double>(c) / 40000.0 - 0.25) <= 0.02);
}

TEST_CASE("diagonal energy refuses oversized forms") {
  const std::size_t n = qsim::kMaxQubits + 1;
  std::vector<double> linear(n, 0.1);
  const QuadraticForm form(n, {}, std::move(linear), 0.0);
  CHECK_THROWS(DiagonalEnergy(form));
}
