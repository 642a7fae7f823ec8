#include "brute.hpp"

#include "qflab/cycles.hpp"

#include <doctest.h>

#include <random>

using namespace qflab;

TEST_CASE("block extraction") {
  const SymMat T = diagonal_matrix({1, 1, 1, 3});
  const auto four = extract_blocks(T, BlockSpec({1, 1, 1, 1}));
  REQUIRE(four.size() == 4);
  CHECK(four[3] == diagonal_matrix({3}));
  CHECK(extract_blocks(T, BlockSpec({4}))[0] == T);
  SymMat B(4, 4);
  B << 2, 1, 0, 0, 1, 2, 0, 0, 0, 0, 4, 1, 0, 0, 1, 6;
  const auto two = extract_blocks(B, BlockSpec({2, 2}));
  CHECK(two[0] == SymMat(B.topLeftCorner(2, 2)));
  CHECK(two[1] == SymMat(B.bottomRightCorner(2, 2)));
  CHECK(admissible_for(B, two));
  CHECK_FALSE(admissible_for(B, {diagonal_matrix({2, 2}), two[1]}));
  CHECK_THROWS_AS(BlockSpec({2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(BlockSpec({0, 4}), std::invalid_argument);
  CHECK_THROWS_AS(BlockSpec({5, -1}), std::invalid_argument);
}

TEST_CASE("isolation examples") {
  const OddPrime p(3);
  CHECK(is_isolated(diagonal_matrix({1, 1, 1, 3}), p));
  CHECK_FALSE(is_isolated(diagonal_matrix({2, 6, 3, 9}), p));
  CHECK_FALSE(is_isolated(diagonal_matrix({1, 1, 1, 0}), p));
  CHECK_THROWS_AS(is_isolated(diagonal_matrix({1, 1, 1, Rational(1, 3)}), p), std::invalid_argument);
}

TEST_CASE("isolation agrees with a search mod p^3") {
  std::mt19937 rng(200);
  std::uniform_int_distribution<int> d(-12, 12);
  int tested = 0;
  while (tested < 200) {
    const std::int64_t p = 3;
    SymMat T(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) T(i, j) = T(j, i) = p * (d(rng) % 2 == 0 ? d(rng) : 0) + (i == j ? d(rng) % 3 : 0);
    if (!is_nonsingular(T)) continue;
    // x^t T x = 1 mod p^3 lifts to Z_p because p is odd and 1 is a unit
    const bool searched = brute::represents_mod(brute::to_int(T), 1, 27);
    CHECK(is_isolated(T, OddPrime(p)) == searched);
    ++tested;
  }
}

TEST_CASE("component labels") {
  const OddPrime p(3);
  const auto a = classify_component({0, 0, false, false}, p);
  CHECK(a.label == ComponentLabel::p_plus_one_lines);
  CHECK(a.line_count == 4);
  CHECK(classify_component({1, 1, false, false}, p).label == ComponentLabel::two_lines);
  CHECK(classify_component({1, 2, false, true}, p).label == ComponentLabel::one_line);
  CHECK(classify_component({0, 1, false, false}, p).label == ComponentLabel::one_line);
  CHECK(classify_component({3, 3, true, false}, p).label == ComponentLabel::isolated);
  CHECK(to_string(ComponentLabel::p_plus_one_lines) == "p_plus_one_lines");
}

TEST_CASE("classify_component is total: a label or a named inconsistency") {
  const OddPrime p(5);
  int labelled = 0, rejected = 0;
  for (int rank = -1; rank <= 4; ++rank)
    for (int dim = -1; dim <= 4; ++dim)
      for (bool one : {false, true})
        for (bool radical : {false, true}) {
          try {
            const auto c = classify_component({rank, dim, one, radical}, p);
            CHECK(!c.case_ref.empty());
            const auto again = classify_component({rank, dim, one, radical}, p);
            CHECK(c.label == again.label);
            CHECK(c.line_count == again.line_count);
            ++labelled;
          } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).size() > 0);
            ++rejected;
          }
        }
  CHECK(labelled == 12);
  CHECK(labelled + rejected == 6 * 6 * 4);
  CHECK_THROWS_WITH_AS(classify_component({2, 3, true, false}, p), doctest::Contains("rank 2 mod p forces dim m = 2"),
                       std::invalid_argument);
}

TEST_CASE("reduced superspecial space") {
  const auto q3 = reduced_superspecial_space(OddPrime(3));
  CHECK(q3.gram == std::vector<std::vector<std::int64_t>>{{2, 0, 0}, {0, 2, 0}, {0, 0, 1}});
  for (std::int64_t p : {3, 5, 7, 11}) {
    const auto q = reduced_superspecial_space(OddPrime(p));
    std::vector<std::int64_t> all(static_cast<std::size_t>(p));
    for (std::int64_t c = 0; c < p; ++c) all[static_cast<std::size_t>(c)] = c;
    CHECK(q.value_set() == all);
    CHECK(clifford_center_square_class(q) == Sign::minus());
  }
}

TEST_CASE("reduced distinguished space") {
  CHECK(reduced_distinguished_space(OddPrime(3)).value_set() == std::vector<std::int64_t>{0, 2});
  for (std::int64_t p : {3, 5, 7, 11, 13}) CHECK_FALSE(reduced_distinguished_space(OddPrime(p)).represents(1));
  // at p = 5 the values are 0 and the nonsquares
  std::vector<std::int64_t> expected{0};
  for (std::int64_t c = 1; c < 5; ++c)
    if (!brute::is_square_mod(c, 5)) expected.push_back(c);
  CHECK(reduced_distinguished_space(OddPrime(5)).value_set() == expected);
}

TEST_CASE("isometry over F_p") {
  const OddPrime p(7);
  CHECK(isometric(diagonal_ff_space(p, {1, 1}), diagonal_ff_space(p, {3, 5})));
  CHECK_FALSE(isometric(diagonal_ff_space(p, {1, 1}), diagonal_ff_space(p, {1, 3})));
  CHECK_FALSE(isometric(diagonal_ff_space(p, {1}), diagonal_ff_space(p, {1, 1})));
  CHECK(diagonal_ff_space(p, {-1, 8}).gram == std::vector<std::vector<std::int64_t>>{{6, 0}, {0, 1}});
}

TEST_CASE("F_{p^2} arithmetic") {
  const Fp2 F(OddPrime(7));
  const auto elems = F.elements();
  CHECK(elems.size() == 49);
  for (const auto& x : elems) {
    CHECK(F.frobenius(x) == F.power(x, 7));
    for (const auto& y : {elems[10], elems[23]}) CHECK(F.norm(F.mul(x, y)) == F.norm(x) * F.norm(y) % 7);
  }
}

TEST_CASE("incidence counts") {
  CHECK(incidence_counts(OddPrime(3)).lines_through_point == 4);
  CHECK(incidence_counts(OddPrime(3)).points_per_line == 10);
  CHECK(incidence_counts(OddPrime(5)).lines_through_point == 6);
  CHECK(incidence_counts(OddPrime(5)).points_per_line == 26);
  for (std::int64_t p : {7, 11, 13, 17, 19, 23}) {
    const auto c = incidence_counts(OddPrime(p));
    CHECK(c.lines_through_point == p + 1);
    CHECK(c.points_per_line == p * p + 1);
  }
}

TEST_CASE("proper intersection sums") {
  const OddPrime p(3);
  CHECK(proper_intersection_sum({{diagonal_matrix({1, 1, 1, 3}), 2}}, p) == 2);
  CHECK(proper_intersection_sum({{diagonal_matrix({1, 1, 3, 3}), 1}, {diagonal_matrix({1, 1, 1, 3}), 3}}, p) == 5);
  CHECK(proper_intersection_sum({}, p) == 0);
  CHECK_THROWS_AS(proper_intersection_sum({{diagonal_matrix({2, 6, 3, 9}), 1}}, p), std::invalid_argument);
}
