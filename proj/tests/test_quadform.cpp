#include "brute.hpp"

#include "qflab/quadform.hpp"
#include "qflab/quaternion.hpp"

#include <doctest.h>

#include <random>

using namespace qflab;

namespace {

SymMat random_symmetric(std::mt19937& rng, int n, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  SymMat T(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) T(i, j) = T(j, i) = d(rng);
  return T;
}

std::vector<int> exponents(const JordanDiagonal& J) {
  std::vector<int> out;
  for (const auto& t : J.terms) out.push_back(t.exponent);
  return out;
}

}  // namespace

TEST_CASE("matrix helpers") {
  const SymMat T = diagonal_matrix({1, 2, 3});
  CHECK(exact_determinant(T) == 6);
  CHECK(is_nonsingular(T));
  CHECK(rank_mod_p(T, OddPrime(3)) == 2);
  SymMat A(2, 2);
  A << 1, 2, 3, 4;
  CHECK_THROWS_AS(require_symmetric(A), std::invalid_argument);
  CHECK_FALSE(is_p_integral(diagonal_matrix({Rational(1, 3)}), 3));
}

TEST_CASE("Jordan splitting examples") {
  const OddPrime p(3);
  {
    const auto J = jordan_diagonalize(diagonal_matrix({1, 1, 1, 3}), p);
    CHECK(exponents(J) == std::vector<int>{0, 0, 0, 1});
    for (const auto& t : J.terms) CHECK(t.eps == Sign::plus());
  }
  {
    SymMat H(2, 2);
    H << 0, 1, 1, 0;
    const auto J = jordan_diagonalize(H, p);
    CHECK(exponents(J) == std::vector<int>{0, 0});
    CHECK(J.block_class(0) == Sign::minus());
  }
  {
    SymMat T(2, 2);
    T << 2, 1, 1, 2;
    const auto J = jordan_diagonalize(T, p);
    CHECK(exponents(J) == std::vector<int>{0, 1});
    CHECK(J.terms[0].eps == Sign::minus());
  }
  CHECK_THROWS_AS(jordan_diagonalize(diagonal_matrix({1, 0}), p), std::invalid_argument);
  CHECK_THROWS_AS(jordan_diagonalize(diagonal_matrix({1, Rational(1, 3)}), p), std::invalid_argument);
}

TEST_CASE("canonical Jordan order pushes block classes to the end") {
  const auto J = canonical_jordan(3, {{1, Sign::minus()}, {0, Sign::minus()}, {0, Sign::plus()}});
  CHECK(J.terms == std::vector<JordanTerm>{{0, Sign::plus()}, {0, Sign::minus()}, {1, Sign::minus()}});
  CHECK(J.max_exponent() == 1);
  CHECK(J.total_exponent() == 1);
  CHECK(J.block_rank(0) == 2);
}

TEST_CASE("Jordan form is Z_p-equivalent to its input (value distributions mod p^2)") {
  std::mt19937 rng(31);
  for (std::int64_t pv : {3, 5}) {
    const OddPrime p(pv);
    const std::int64_t q = pv * pv;
    int tested = 0;
    while (tested < 15) {
      const SymMat T = random_symmetric(rng, 3, 9);
      if (!is_nonsingular(T)) continue;
      const SymMat D = jordan_diagonalize(T, p).as_matrix();
      CHECK_MESSAGE(brute::value_distribution(brute::to_int(T), q) == brute::value_distribution(brute::to_int(D), q),
                    "p=" << pv);
      ++tested;
    }
  }
}

TEST_CASE("Jordan form is Z_p-equivalent to its input (representation counts)") {
  SymMat T(2, 2);
  T << 2, 1, 1, 2;
  const SymMat D = jordan_diagonalize(T, OddPrime(3)).as_matrix();
  for (const std::vector<std::int64_t>& s : {std::vector<std::int64_t>{1, 1, 2}, {1, 2, 3}, {1, -1, 1}}) {
    for (int t : {1, 2}) {
      const std::int64_t q = brute::power(3, t);
      CHECK(brute::count(s, brute::to_int(T), q) == brute::count(s, brute::to_int(D), q));
    }
  }
}

TEST_CASE("Hasse invariant examples") {
  CHECK(hasse_invariant(std::vector<Rational>{1, 1, 1, 1, 1}, Place::finite(3)) == Sign::plus());
  CHECK(hasse_invariant(std::vector<Rational>{1, 1, -1, -1, 1}, Place::finite(3)) == Sign::plus());
  for (std::int64_t pv : {3, 5, 7, 11}) {
    const Rational beta = OddPrime(pv).least_nonsquare();
    const std::vector<Rational> norm{1, -beta, -pv, pv * beta};
    CHECK(hasse_invariant(norm, Place::finite(pv)) == Sign::minus());
  }
}

TEST_CASE("Hasse invariant does not depend on the diagonalization") {
  std::mt19937 rng(100);
  std::uniform_int_distribution<int> d(-3, 3);
  int tested = 0;
  while (tested < 100) {
    const SymMat T = random_symmetric(rng, 4, 9);
    if (!is_nonsingular(T)) continue;
    RationalMatrix P(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) P(i, j) = d(rng);
    if (exact_determinant(P) == 0) continue;
    const QuadSpace a(T);
    const QuadSpace b(SymMat(P.transpose() * T * P));
    std::set<std::int64_t> primes{2, 3, 5, 7};
    for (auto q : prime_factors(numerator_of(a.determinant()))) primes.insert(q);
    for (auto q : prime_factors(numerator_of(exact_determinant(P)))) primes.insert(q);
    CHECK(a.signature() == b.signature());
    for (auto q : primes) CHECK(a.hasse(Place::finite(q)) == b.hasse(Place::finite(q)));
    ++tested;
  }
}

TEST_CASE("QuadSpace rejects singular Gram matrices") {
  CHECK_THROWS_AS(QuadSpace(diagonal_matrix({1, 0})), std::invalid_argument);
}

TEST_CASE("represents_local examples") {
  const OddPrime p(3);
  const Place v = Place::finite(3);
  CHECK(represents_local(space_v(p), diagonal_matrix({1, 1, 1, 1}), v));
  CHECK_FALSE(represents_local(space_v(p), diagonal_matrix({1, 1, 1, 3}), v));
  CHECK(represents_local(QuadSpace::from_diagonal({1, 1, 1, 1, 1}), diagonal_matrix({1, 1, 1, 3}), Place::infinity()));
  CHECK_FALSE(represents_local(QuadSpace::from_diagonal({1, 1, 1, 1, 1}), diagonal_matrix({1, 1, 1, -3}), Place::infinity()));
  CHECK_THROWS_AS(represents_local(space_v(p), SymMat::Identity(6, 6), v), std::invalid_argument);
  CHECK_THROWS_AS(represents_local(space_v(p), diagonal_matrix({1, 0}), v), std::invalid_argument);
}

TEST_CASE("represents_one_over_Zp") {
  const OddPrime p(3);
  CHECK(represents_one_over_Zp(diagonal_matrix({1, 5, 7, 9}), p));
  CHECK_FALSE(represents_one_over_Zp(diagonal_matrix({2, 6, 3, 9}), p));
  CHECK_FALSE(brute::represents_mod(brute::to_int(diagonal_matrix({2, 6, 3, 9})), 1, 27));
  CHECK(represents_one_over_Zp(diagonal_matrix({2, 2, 3, 3}), p));
  CHECK(brute::represents_mod(brute::to_int(diagonal_matrix({2, 2, 3, 3})), 1, 27));
}

TEST_CASE("exactly one of V and V' represents a rank-4 target") {
  std::mt19937 rng(7);
  const std::array<std::int64_t, 5> primes{3, 5, 7, 11, 13};
  int tested = 0;
  while (tested < 300) {
    const SymMat T = random_symmetric(rng, 4, 50);
    if (!is_nonsingular(T)) continue;
    const OddPrime p(primes[static_cast<std::size_t>(tested % 5)]);
    const Place v = Place::finite(p);
    CHECK(represents_local(space_v(p), T, v) != represents_local(space_v_prime(p), T, v));
    ++tested;
  }
}

TEST_CASE("V and V' share rank and determinant and differ in Hasse invariant") {
  for (std::int64_t pv : {3, 5, 7, 11, 13}) {
    const OddPrime p(pv);
    const Place v = Place::finite(pv);
    CHECK(same_square_class(space_v(p).determinant(), space_v_prime(p).determinant(), v));
    CHECK(space_v(p).hasse(v) == -space_v_prime(p).hasse(v));
  }
}

TEST_CASE("standard lattices") {
  CHECK(split_lattice_diagonal(0) == std::vector<Rational>{1, 1, -1, 1, -1});
  CHECK(split_lattice_diagonal(1).size() == 7);
  CHECK(hyperbolic_diagonal(2) == std::vector<Rational>{1, -1, 1, -1});
  CHECK(twisted_lattice_diagonal(OddPrime(3)) == std::vector<Rational>{1, 1, 2, 3, -6});
  CHECK(maximal_order_lattice_diagonal(OddPrime(3)) == std::vector<Rational>{1, 1, -2, 3, -6});
  // the maximal-order lattice spans V', the literal diagonal does not when p = 3 mod 4
  const Place v = Place::finite(3);
  const QuadSpace M = QuadSpace::from_diagonal(maximal_order_lattice_diagonal(OddPrime(3)));
  CHECK(same_square_class(M.determinant(), space_v_prime(OddPrime(3)).determinant(), v));
  CHECK(M.hasse(v) == space_v_prime(OddPrime(3)).hasse(v));
  const QuadSpace L = QuadSpace::from_diagonal(twisted_lattice_diagonal(OddPrime(3)));
  CHECK_FALSE(same_square_class(L.determinant(), space_v_prime(OddPrime(3)).determinant(), v));
}

TEST_CASE("Diff examples") {
  const IncoherentCollection C(QuaternionAlgebra::split());
  CHECK(diff_set(diagonal_matrix({1, 1, 1, 3}), C) == std::set<Place>{Place::finite(3)});
  // H + H + <1> and <1,1,1,1,1> have different Hasse invariants at 2
  CHECK(diff_set(diagonal_matrix({1, 1, 1, 1}), C) == std::set<Place>{Place::finite(2)});
  CHECK(diff_set(diagonal_matrix({1, 1, 1, -3}), C).contains(Place::infinity()));
  CHECK(diff_signature_unaddressed(diagonal_matrix({1, 1, -1, -1})));
  CHECK_FALSE(diff_signature_unaddressed(diagonal_matrix({1, 1, 1, 3})));
  CHECK_THROWS_AS(diff_set(diagonal_matrix({1, 1, 1}), C), std::invalid_argument);
  CHECK_THROWS_AS(IncoherentCollection(QuaternionAlgebra::definite_hamilton()), std::invalid_argument);
}

TEST_CASE("Diff has odd cardinality for positive-definite targets") {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> d(-4, 4);
  for (const auto& B : {QuaternionAlgebra::split(), QuaternionAlgebra::discriminant_six()}) {
    const IncoherentCollection C(B);
    int tested = 0;
    while (tested < 100) {
      RationalMatrix M(4, 4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) M(i, j) = d(rng);
      const SymMat T = M.transpose() * M;
      if (!is_nonsingular(T)) continue;
      CHECK(diff_set(T, C).size() % 2 == 1);
      ++tested;
    }
  }
}
