#include "qflab/densities.hpp"

#include "qflab/gkmult.hpp"

#include <algorithm>
#include <stdexcept>

namespace qflab {

namespace {

Rational inverse_power(OddPrime p, int k) { return rational_pow(Rational(p.value()), -k); }

RationalPolynomial x_power(int k, const Rational& c = 1) { return RationalPolynomial::monomial(c, k); }

// (1 - p^{-2} X)(1 - p^{-2} X^2)
RationalPolynomial kitaoka_prefactor(OddPrime p) {
  const Rational q = inverse_power(p, 2);
  return (RationalPolynomial(1) - x_power(1, q)) * (RationalPolynomial(1) - x_power(2, q));
}

}  // namespace

void GKTriple::validate() const {
  if (a[0] < 0) throw std::invalid_argument("exponents must be nonnegative");
  if (a[0] > a[1] || a[1] > a[2]) throw std::invalid_argument("exponents must satisfy a1 <= a2 <= a3");
}

SymMat GKTriple::as_matrix() const {
  std::vector<Rational> d;
  for (int i = 0; i < 3; ++i)
    d.push_back(unit_representative(eps[static_cast<std::size_t>(i)], p) * rational_pow(Rational(p.value()), a[static_cast<std::size_t>(i)]));
  return diagonal_matrix(d);
}

Sign chi_minus_one(OddPrime p) { return chi(Rational(-1), p); }

Rational unit_representative(UnitClass c, OddPrime p) { return c.is_plus() ? Rational(1) : Rational(p.least_nonsquare()); }

DensityPolynomial unary_density_factor(UnitClass eps0, OddPrime p) {
  return DensityPolynomial(RationalPolynomial(1) + x_power(1, Rational(eps0.value()) * inverse_power(p, 2)));
}

Sign chi_tilde(const GKTriple& t) {
  const Sign m1 = chi_minus_one(t.p);
  const bool e12 = (t.a[0] - t.a[1]) % 2 == 0;
  const bool e23 = (t.a[1] - t.a[2]) % 2 == 0;
  if (e12 && e23) return Sign::plus();
  if (e12) return m1 * t.eps[0] * t.eps[1];
  if (!e23) return m1 * t.eps[0] * t.eps[2];
  return m1 * t.eps[1] * t.eps[2];
}

Sign pair_sign(const GKTriple& t) { return chi_minus_one(t.p) * t.eps[0] * t.eps[1]; }

RationalPolynomial kitaoka_bracket(const GKTriple& t) {
  t.validate();
  const auto [a1, a2, a3] = t.a;
  const Rational p = t.p.value();
  const Rational chi_t = chi_tilde(t).value();
  const bool same_parity = (a1 - a2) % 2 == 0;
  const int last_ell = same_parity ? (a1 + a2) / 2 - 1 : (a1 + a2 - 1) / 2;

  RationalPolynomial q;
  for (int ell = 0; ell <= last_ell; ++ell) {
    const Rational weight = rational_pow(p, ell);
    for (int k = 0; k <= std::min(a1, ell); ++k) {
      q += x_power(2 * ell - k, weight);
      q += x_power(a1 + a2 + a3 + k - 2 * ell, weight * chi_t);
    }
  }
  if (same_parity) {
    RationalPolynomial low, tail;
    for (int k = 0; k <= a1; ++k) low += x_power(k);
    const Rational e = pair_sign(t).value();
    Rational ej = 1;
    for (int j = 0; j <= a3 - a2; ++j, ej *= e) tail += x_power(j, ej);
    q += x_power(a2, rational_pow(p, (a1 + a2) / 2)) * low * tail;
  }
  return q;
}

DensityPolynomial kitaoka_ternary_poly(const GKTriple& t) {
  return DensityPolynomial(kitaoka_prefactor(t.p) * kitaoka_bracket(t));
}

DensityPolynomial assemble_A(const SymMat& T, OddPrime p) {
  const JordanDiagonal J = jordan_diagonalize(T, p);
  if (J.rank() != 4) throw std::invalid_argument("expected a rank-4 target");
  if (J.block_rank(0) == 0) throw std::invalid_argument("reduction formula requires a unimodular entry");
  if (!represents_one_over_Zp(T, p)) throw std::invalid_argument("Kitaoka closed form requires represented 1");
  const GKNormalForm nf = gross_keating_exponents(T, p);
  return unary_density_factor(nf.eps0, p) * kitaoka_ternary_poly(nf.triple);
}

Rational value_at_1(const DensityPolynomial& A) { return A(Rational(1)); }

Rational derivative_at_1(const DensityPolynomial& A) { return A.derivative_at(Rational(1)); }

std::vector<Rational> unimodular_complement(UnitClass eps0, OddPrime p, int r) {
  std::vector<Rational> d{1, 1, 1, unit_representative(eps0, p)};
  for (const auto& x : hyperbolic_diagonal(r)) d.push_back(x);
  return d;
}

Rational twisted_lemma_factor(OddPrime p) {
  const Rational P = p.value();
  return 2 * (1 + Rational(chi_minus_one(p).value()) / P) * (P + 1);
}

Rational twisted_unary_factor(OddPrime p) { return 1 - Rational(chi_minus_one(p).value()) / Rational(p.value()); }

Rational twisted_density(const SymMat& T, OddPrime p) {
  require_symmetric(T);
  if (T.rows() != 4) throw std::invalid_argument("expected a rank-4 target");
  if (!is_nonsingular(T)) throw std::invalid_argument("twisted density requires det T != 0; use the counting oracle");
  if (!is_p_integral(T, p)) throw std::invalid_argument("twisted density requires p-integral T; use the counting oracle");
  if (!represents_one_over_Zp(T, p))
    throw std::invalid_argument("twisted density closed form requires T to represent 1; use the counting oracle");
  if (!represents_local(space_v_prime(p), T, Place::finite(p))) return 0;
  const Rational P = p.value();
  return 2 * (1 - inverse_power(p, 2)) * (P + 1);
}

}  // namespace qflab
