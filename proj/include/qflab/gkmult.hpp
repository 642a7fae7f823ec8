#pragma once

// Local intersection multiplicities of three special cycles meeting at an
// isolated point, computed from the Gross-Keating invariants of T.

#include "qflab/densities.hpp"
#include "qflab/padic.hpp"
#include "qflab/quadform.hpp"
#include "qflab/rational.hpp"

#include <vector>

namespace qflab {

/// T ~ <1> + diag(eps_i p^{a_i}) over Z_p.
struct GKNormalForm {
  GKTriple triple;
  UnitClass eps0 = Sign::plus();
  /// Integral vector x with x^t T x = 1 mod p^depth; its reduction mod p is
  /// the lexicographically smallest vector with x^t T x a nonzero square mod p.
  std::vector<Integer> witness;
  int depth = 0;
};

/// Splits off a vector of square unit norm and Jordan-reduces the complement.
/// Throws std::invalid_argument if T is singular, not p-integral, not of rank 4,
/// or does not represent 1 over Z_p.
GKNormalForm gross_keating_exponents(const SymMat& T, OddPrime p);

struct Multiplicity {
  Rational value;
  bool integral = true;
};

/// The closed form for the length at an isolated point. It is total on ordered
/// exponents; the even-case top term is half-integral when (a_1 + 1)(a_3 - a_2 + 1)
/// is odd, which is reported through `integral` rather than rounded.
/// Throws std::invalid_argument for unordered or negative exponents.
Multiplicity e_p(int a1, int a2, int a3, OddPrime p);
Multiplicity e_p(const GKTriple& t);

/// As e_p, for callers that have certified the non-representation hypothesis.
/// Throws std::domain_error if the value is not an integer.
Integer e_p_certified(const GKTriple& t);

/// True iff v_p(det T) = 1. Same preconditions as gross_keating_exponents.
bool transversal(const SymMat& T, OddPrime p);

}  // namespace qflab
