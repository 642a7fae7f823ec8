#include "qflab/gkmult.hpp"

#include <stdexcept>

namespace qflab {

namespace {

// Lexicographically smallest x in (Z/p)^n, x != 0, with x^t T x a nonzero square mod p.
std::vector<std::int64_t> smallest_square_witness(const SymMat& T, OddPrime p) {
  const Eigen::Index n = T.rows();
  std::vector<std::vector<std::uint64_t>> t(static_cast<std::size_t>(n), std::vector<std::uint64_t>(static_cast<std::size_t>(n)));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) t[i][j] = reduce_mod(T(i, j), static_cast<std::uint64_t>(p.value()));
  std::vector<bool> is_square(static_cast<std::size_t>(p.value()), false);
  for (std::int64_t y = 1; y < p; ++y) is_square[static_cast<std::size_t>(y * y % p)] = true;

  // the last coordinate varies fastest, so the first hit is lexicographically least
  std::vector<std::int64_t> x(static_cast<std::size_t>(n), 0);
  while (true) {
    Eigen::Index i = n - 1;
    while (i >= 0 && ++x[static_cast<std::size_t>(i)] == p) x[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    std::uint64_t q = 0;
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b)
        q = (q + t[a][b] * static_cast<std::uint64_t>(x[a]) % p * static_cast<std::uint64_t>(x[b])) % p;
    if (q != 0 && is_square[q]) return x;
  }
  throw std::logic_error("no square-valued vector mod p although T represents 1");
}

bool divisible(const Rational& r, OddPrime p, int k) { return r == 0 || valuation(r, p) >= k; }

// s with c s^2 = 1 mod p^depth, for a unit c that is a square mod p.
Integer inverse_square_root(const Rational& c, OddPrime p, int depth) {
  Integer s = 0;
  for (std::int64_t y = 1; y < p; ++y) {
    if (divisible(c * y * y - 1, p, 1)) {
      s = y;
      break;
    }
  }
  Integer pk = p.value();
  for (int k = 1; k < depth; ++k, pk *= p.value()) {
    for (std::int64_t y = 0; y < p; ++y) {
      const Integer cand = s + pk * y;
      if (divisible(c * Rational(cand) * Rational(cand) - 1, p, k + 1)) {
        s = cand;
        break;
      }
    }
  }
  return s;
}

}  // namespace

GKNormalForm gross_keating_exponents(const SymMat& T, OddPrime p) {
  require_symmetric(T);
  if (T.rows() != 4) throw std::invalid_argument("expected a rank-4 target");
  if (!represents_one_over_Zp(T, p)) throw std::invalid_argument("T does not represent 1 over Z_p");

  const std::vector<std::int64_t> x = smallest_square_witness(T, p);
  RationalVector xv(4);
  for (Eigen::Index i = 0; i < 4; ++i) xv(i) = x[static_cast<std::size_t>(i)];
  const RationalVector Tx = T * xv;
  const Rational c = xv.dot(Tx);

  Eigen::Index pivot = 0;
  while (x[static_cast<std::size_t>(pivot)] == 0) ++pivot;
  std::vector<Eigen::Index> rest;
  for (Eigen::Index i = 0; i < 4; ++i)
    if (i != pivot) rest.push_back(i);
  SymMat complement(3, 3);
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index k = 0; k < 3; ++k)
      complement(i, k) = T(rest[i], rest[k]) - Tx(rest[i]) * Tx(rest[k]) / c;

  const JordanDiagonal J = jordan_diagonalize(complement, p);
  GKNormalForm out;
  out.triple.p = p;
  for (std::size_t i = 0; i < 3; ++i) {
    out.triple.a[i] = J.terms[i].exponent;
    out.triple.eps[i] = J.terms[i].eps;
  }
  out.eps0 = chi(c, p);
  out.depth = J.max_exponent() + 2;
  const Integer s = inverse_square_root(c, p, out.depth);
  const Integer modulus = integer_pow(p.value(), static_cast<unsigned>(out.depth));
  for (auto xi : x) out.witness.push_back(Integer(xi) * s % modulus);
  return out;
}

Multiplicity e_p(int a1, int a2, int a3, OddPrime p) {
  GKTriple t;
  t.a = {a1, a2, a3};
  t.validate();
  const Rational P = p.value();
  Rational e = 0;
  for (int i = 0; i <= a1 - 1; ++i) e += Rational((i + 1) * (a1 + a2 + a3 - 3 * i)) * rational_pow(P, i);
  const bool even = (a1 + a2) % 2 == 0;
  const int top = even ? (a1 + a2 - 2) / 2 : (a1 + a2 - 1) / 2;
  for (int i = a1; i <= top; ++i) e += Rational((a1 + 1) * (2 * a1 + a2 + a3 - 4 * i)) * rational_pow(P, i);
  if (even) e += Rational((a1 + 1) * (a3 - a2 + 1), 2) * rational_pow(P, (a1 + a2) / 2);
  return {e, denominator_of(e) == 1};
}

Multiplicity e_p(const GKTriple& t) { return e_p(t.a[0], t.a[1], t.a[2], t.p); }

Integer e_p_certified(const GKTriple& t) {
  const Multiplicity m = e_p(t);
  if (!m.integral) throw std::domain_error("multiplicity " + to_string(m.value) + " is not an integer");
  return numerator_of(m.value);
}

bool transversal(const SymMat& T, OddPrime p) {
  gross_keating_exponents(T, p);
  return valuation(exact_determinant(T), p) == 1;
}

}  // namespace qflab
