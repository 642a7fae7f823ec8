#include "brute.hpp"

#include "qflab/counting.hpp"
#include "qflab/densities.hpp"
#include "qflab/quadform.hpp"

#include <doctest.h>

#include <random>

using namespace qflab;

namespace {

CountJob job(std::vector<Rational> s, SymMat T, std::int64_t p, int t, Strategy strategy = Strategy::mitm) {
  return CountJob{std::move(s), std::move(T), OddPrime(p), t, strategy};
}

std::vector<std::int64_t> ints(const std::vector<Rational>& s) {
  std::vector<std::int64_t> out;
  for (const auto& x : s) out.push_back(numerator_of(x).convert_to<std::int64_t>());
  return out;
}

}  // namespace

TEST_CASE("small counts by hand") {
  for (auto strategy : {Strategy::naive, Strategy::mitm}) {
    CHECK(count_solutions(job({1}, diagonal_matrix({1}), 3, 1, strategy)) == 2);
    // only (0, 0): -1 is not a square mod 3
    CHECK(count_solutions(job({1, 1}, diagonal_matrix({0}), 3, 1, strategy)) == 1);
  }
  CHECK(brute::count({1, 1}, {{0}}, 3) == 1);
}

TEST_CASE("strategies parse and print") {
  CHECK(parse_strategy("naive") == Strategy::naive);
  CHECK(parse_strategy("mitm") == Strategy::mitm);
  CHECK(to_string(Strategy::mitm) == "mitm");
  CHECK_THROWS_AS(parse_strategy("fast"), std::invalid_argument);
}

TEST_CASE("job validation") {
  CHECK_THROWS_AS(count_solutions(job({1}, diagonal_matrix({1, 1}), 3, 1)), std::invalid_argument);
  CHECK_THROWS_AS(count_solutions(job({1}, diagonal_matrix({1}), 3, 0)), std::invalid_argument);
  CHECK_THROWS_AS(count_solutions(job({Rational(1, 3)}, diagonal_matrix({1}), 3, 1)), std::invalid_argument);
  CHECK_THROWS_AS(count_solutions(job({1, 1}, diagonal_matrix({Rational(1, 3)}), 3, 1)), std::invalid_argument);
}

TEST_CASE("the state budget is enforced") {
  CountOptions tight;
  tight.state_budget = 100;
  CHECK_THROWS_AS(count_solutions(job({1, 1, 1, 1}, diagonal_matrix({1}), 5, 2), tight), BudgetExceeded);
  CHECK(estimated_states(job({1, 1}, diagonal_matrix({1}), 3, 1, Strategy::naive)) == 9);
}

TEST_CASE("counts agree with a separate enumeration") {
  std::mt19937 rng(12);
  std::uniform_int_distribution<int> entry(-6, 6);
  for (int i = 0; i < 20; ++i) {
    const std::int64_t p = i % 2 ? 3 : 5;
    const int m = 1 + i % 3;
    const int n = 1 + (i % 2 == 0 && m > 1);
    std::vector<Rational> s;
    for (int k = 0; k < m; ++k) s.push_back(entry(rng));
    SymMat T(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) T(a, b) = T(b, a) = entry(rng);
    const CountJob j = job(s, T, p, 1);
    CHECK(count_solutions(j) == brute::count(ints(s), brute::to_int(T), p));
  }
}

TEST_CASE("MITM equals naive on random jobs within 10^6 states") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> entry(-10, 10);
  int tested = 0;
  while (tested < 60) {
    const std::int64_t p = coin(rng) ? 3 : 5;
    const int t = 1 + coin(rng);
    const int m = std::uniform_int_distribution<int>(1, 5)(rng);
    const int n = std::uniform_int_distribution<int>(1, std::min(m, 3))(rng);
    std::vector<Rational> s;
    for (int k = 0; k < m; ++k) s.push_back(entry(rng));
    SymMat T(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) T(a, b) = T(b, a) = entry(rng);
    CountJob naive = job(s, T, p, t, Strategy::naive);
    if (estimated_states(naive) > 1e6) continue;
    CountJob mitm = naive;
    mitm.strategy = Strategy::mitm;
    CHECK(count_solutions(naive) == count_solutions(mitm));
    ++tested;
  }
}

TEST_CASE("counts are invariant under equivalence of the target") {
  // permutation, and a unimodular change of basis over Z
  SymMat T(3, 3);
  T << 2, 1, 0, 1, 3, 1, 0, 1, 5;
  RationalMatrix P(3, 3);
  P << 0, 1, 0, 1, 0, 0, 0, 0, 1;
  RationalMatrix U(3, 3);
  U << 1, 1, 0, 0, 1, 2, 0, 0, 1;
  const std::vector<Rational> s{1, 1, 2, 3};
  for (int t : {1, 2}) {
    const Integer base = count_solutions(job(s, T, 3, t));
    CHECK(count_solutions(job(s, SymMat(P.transpose() * T * P), 3, t)) == base);
    CHECK(count_solutions(job(s, SymMat(U.transpose() * T * U), 3, t)) == base);
    CHECK(count_solutions(job(s, jordan_diagonalize(T, OddPrime(3)).as_matrix(), 3, t)) == base);
  }
}

TEST_CASE("normalization") {
  CHECK(normalization_exponent(5, 1) == 4);
  CHECK(normalization_exponent(4, 3) == 6);
  const DensityResult r = normalized_count(job(split_lattice_diagonal(0), diagonal_matrix({1}), 3, 1));
  CHECK(r.exponent == 4);
  CHECK(r.value == Rational(r.raw_count) / 81);
  CHECK_FALSE(r.stabilized);
}

TEST_CASE("density oracle on unary targets") {
  const auto S0 = split_lattice_diagonal(0);
  const DensityResult a = density_oracle(S0, diagonal_matrix({1}), OddPrime(3));
  CHECK(a.value == Rational(10, 9));
  CHECK(a.stabilized);
  CHECK(density_oracle(S0, diagonal_matrix({2}), OddPrime(3)).value == Rational(8, 9));
  // the brute-force enumeration agrees at t = 2
  CHECK(brute::density(ints(S0), {{1}}, 3, 2) == Rational(10, 9));
}

TEST_CASE("density oracle on H_4 against diag(1,1,1)") {
  const DensityResult r = density_oracle(hyperbolic_diagonal(2), diagonal_matrix({1, 1, 1}), OddPrime(3));
  CHECK(r.value == Rational(64, 81));
  CHECK(r.table.size() == 2);
}

TEST_CASE("a single level cannot stabilize") {
  OracleOptions opts;
  opts.t_start = 1;
  opts.t_max = 1;
  CHECK_THROWS_AS(density_oracle(split_lattice_diagonal(0), diagonal_matrix({1}), OddPrime(3), opts), NotStabilized);
}

TEST_CASE("positive density exactly for represented targets") {
  const OddPrime p(3);
  const QuadSpace H4 = QuadSpace::from_diagonal(hyperbolic_diagonal(2));
  for (int a3 = 0; a3 <= 1; ++a3) {
    for (Sign e2 : {Sign::plus(), Sign::minus()}) {
      for (Sign e3 : {Sign::plus(), Sign::minus()}) {
        const SymMat T = diagonal_matrix({1, unit_representative(e2, p), unit_representative(e3, p) * (a3 ? 3 : 1)});
        const Rational value = normalized_count(job(hyperbolic_diagonal(2), T, 3, 2)).value;
        CHECK((value > 0) == represents_local(H4, T, Place::finite(3)));
      }
    }
  }
}

TEST_CASE("reduction formula: splitting off a unit on the split lattice") {
  // alpha(S_0, <e0> + T~) = alpha(S_0, <e0>) alpha(diag(1,1,1,e0), T~)
  const OddPrime p(3);
  const auto S0 = split_lattice_diagonal(0);
  for (Sign e0 : {Sign::plus(), Sign::minus()}) {
    const Rational u0 = unit_representative(e0, p);
    const Rational unary = density_oracle(S0, diagonal_matrix({u0}), p).value;
    const auto complement = unimodular_complement(e0, p);
    for (const auto& rest : {std::vector<Rational>{1}, {2}, {3}, {6}}) {
      std::vector<Rational> full{u0};
      full.insert(full.end(), rest.begin(), rest.end());
      const Rational direct = density_oracle(S0, diagonal_matrix(full), p).value;
      const Rational reduced = density_oracle(complement, diagonal_matrix(rest), p).value;
      CHECK(direct == unary * reduced);
    }
  }
}
