#include "qflab/whittaker.hpp"

#include "qflab/counting.hpp"
#include "qflab/gkmult.hpp"

#include <stdexcept>

namespace qflab {

namespace {

void require_same_prime(const LogPMultiple& a, const LogPMultiple& b) {
  if (a.prime().value() != b.prime().value()) throw std::invalid_argument("log p multiples at different primes");
}

void require_rank4(const SymMat& T) {
  require_symmetric(T);
  if (T.rows() != 4) throw std::invalid_argument("expected a rank-4 target");
}

}  // namespace

std::string LogPMultiple::to_string() const { return qflab::to_string(coeff_) + "*log(" + std::to_string(p_.value()) + ")"; }

LogPMultiple operator+(const LogPMultiple& a, const LogPMultiple& b) {
  require_same_prime(a, b);
  return {a.coeff_ + b.coeff_, a.p_};
}

LogPMultiple operator-(const LogPMultiple& a, const LogPMultiple& b) {
  require_same_prime(a, b);
  return {a.coeff_ - b.coeff_, a.p_};
}

LogPMultiple operator/(const LogPMultiple& a, const Rational& c) {
  if (c == 0) throw std::domain_error("division by zero");
  return {a.coeff_ / c, a.p_};
}

Rational whittaker_value(const SymMat& T, OddPrime p, int r) {
  require_rank4(T);
  if (!is_nonsingular(T)) throw std::invalid_argument("T is singular");
  if (r < 0) throw std::invalid_argument("r must be nonnegative");
  if (!is_p_integral(T, p)) return 0;

  const Rational X = rational_pow(Rational(p.value()), -r);
  const JordanDiagonal J = jordan_diagonalize(T, p);
  if (J.block_rank(0) > 0 && represents_one_over_Zp(T, p)) return assemble_A(T, p)(X);
  if (J.block_rank(0) == 1) {
    // <eps0> + T~ with eps0 a nonsquare: reduction formula, oracle for the ternary part
    std::vector<Rational> rest;
    for (std::size_t i = 1; i < J.terms.size(); ++i)
      rest.push_back(unit_representative(J.terms[i].eps, p) * rational_pow(Rational(p.value()), J.terms[i].exponent));
    const Rational unary = unary_density_factor(J.terms[0].eps, p)(X);
    return unary * density_oracle(unimodular_complement(J.terms[0].eps, p, r), diagonal_matrix(rest), p).value;
  }
  return density_oracle(split_lattice_diagonal(r), T, p).value;
}

LogPMultiple whittaker_derivative(const SymMat& T, OddPrime p) {
  require_rank4(T);
  if (!is_nonsingular(T)) throw std::invalid_argument("T is singular");
  if (!is_p_integral(T, p)) throw std::invalid_argument("T is not p-integral");
  if (represents_local(space_v(p), T, Place::finite(p)))
    throw std::invalid_argument("derivative identity requires Diff(T) to contain p");
  return {-derivative_at_1(assemble_A(T, p)), p};
}

Rational whittaker_twisted_value(const SymMat& T, OddPrime p) {
  return rational_pow(Rational(p.value()), -4) * twisted_density(T, p);
}

Rational volume_ratio(OddPrime p) {
  const Rational P = p.value();
  const Rational q2 = rational_pow(P, -2), q4 = rational_pow(P, -4);
  return (1 - q4) * (1 - q2) / (q4 * (1 - q2) * 2 * (P + 1));
}

Rational volume_ratio_closed(OddPrime p) {
  const Rational P = p.value();
  return (P * P + 1) * (P - 1) / 2;
}

RatioReport verify_ratio_identity(const SymMat& T, OddPrime p) {
  require_rank4(T);
  if (!is_p_integral(T, p)) throw std::invalid_argument("T is not p-integral");
  if (!is_nonsingular(T)) throw std::invalid_argument("T is singular");
  if (!represents_one_over_Zp(T, p)) throw std::invalid_argument("T does not represent 1 over Z_p");
  if (represents_local(space_v(p), T, Place::finite(p))) throw std::invalid_argument("T is represented by V(Q_p)");

  RatioReport out;
  out.T = T;
  out.p = p;
  out.lhs = whittaker_derivative(T, p) / whittaker_twisted_value(T, p);
  const Multiplicity e = e_p(gross_keating_exponents(T, p).triple);
  out.e_p = e.value;
  out.e_p_integral = e.integral;
  out.rhs = volume_ratio_closed(p) * e.value;
  out.equal = out.lhs.coeff() == out.rhs;
  out.diff = diff_set(T, IncoherentCollection(QuaternionAlgebra::split()));
  return out;
}

}  // namespace qflab
