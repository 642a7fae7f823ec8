#pragma once

// Closed-form local densities for p odd: the unary factor, Kitaoka's ternary
// formula against split forms, the assembled A(X) for rank-4 targets that
// represent 1, and the density against the ramified lattice.
//
// Everything here is a function of X = p^{-r}, where r counts hyperbolic
// planes added to the representing lattice.

#include "qflab/padic.hpp"
#include "qflab/polynomial.hpp"
#include "qflab/quadform.hpp"
#include "qflab/rational.hpp"

#include <array>

namespace qflab {

using RationalPolynomial = Polynomial<Rational>;
using DensityPolynomial = RationalFunction<Rational>;

/// diag(eps_1 p^{a_1}, eps_2 p^{a_2}, eps_3 p^{a_3}) with a_1 <= a_2 <= a_3.
struct GKTriple {
  std::array<int, 3> a{};
  std::array<UnitClass, 3> eps{};
  OddPrime p{3};

  /// Throws std::invalid_argument for negative or unordered exponents.
  void validate() const;
  int total() const { return a[0] + a[1] + a[2]; }
  SymMat as_matrix() const;
  friend bool operator==(const GKTriple&, const GKTriple&) = default;
};

/// chi(-1) at p.
Sign chi_minus_one(OddPrime p);

/// 1 + chi(eps0) p^{-2} X.
DensityPolynomial unary_density_factor(UnitClass eps0, OddPrime p);

/// The sign attached to the parity pattern of the exponents.
Sign chi_tilde(const GKTriple& t);

/// chi(-eps_1 eps_2).
Sign pair_sign(const GKTriple& t);

/// Kitaoka's bracket Q(X): the density against the split form of rank 2r + 4
/// divided by (1 - p^{-2} X)(1 - p^{-2} X^2). Always a polynomial.
RationalPolynomial kitaoka_bracket(const GKTriple& t);

/// (1 - p^{-2} X)(1 - p^{-2} X^2) Q(X).
DensityPolynomial kitaoka_ternary_poly(const GKTriple& t);

/// A(X) for a nonsingular rank-4 T that has a unimodular Jordan entry and
/// represents 1. Throws std::invalid_argument with "reduction formula
/// requires a unimodular entry" or "Kitaoka closed form requires represented 1".
DensityPolynomial assemble_A(const SymMat& T, OddPrime p);

Rational value_at_1(const DensityPolynomial& A);
/// Throws std::domain_error if the denominator vanishes at 1.
Rational derivative_at_1(const DensityPolynomial& A);

/// diag(1, 1, 1, eps0) plus r hyperbolic planes: the orthogonal complement of
/// a vector of norm eps0 in the split lattice, used to cross-check the
/// reduction formula with the counting oracle.
std::vector<Rational> unimodular_complement(UnitClass eps0, OddPrime p, int r = 0);

/// A p-adic unit of the given square class: 1 or the least nonsquare.
Rational unit_representative(UnitClass c, OddPrime p);

/// 2 (1 + chi(-1) p^{-1}) (p + 1), the factor claimed for the density of the
/// ternary complement against the maximal-order norm form.
Rational twisted_lemma_factor(OddPrime p);

/// 1 - chi(-1) p^{-1}, the claimed density of 1 against the ramified lattice.
Rational twisted_unary_factor(OddPrime p);

/// Density of T against the ramified lattice: 2 (1 - p^{-2})(p + 1) when V'
/// represents T, else 0. Requires det T != 0, T p-integral and representing 1;
/// otherwise throws std::invalid_argument pointing at the counting oracle.
Rational twisted_density(const SymMat& T, OddPrime p);

}  // namespace qflab
