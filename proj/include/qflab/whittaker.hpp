#pragma once

// Local Whittaker values at the identity, expressed through densities, and the
// ratio identity between the derivative on the coherent side and the value on
// the twisted side.

#include "qflab/densities.hpp"
#include "qflab/padic.hpp"
#include "qflab/quadform.hpp"
#include "qflab/rational.hpp"

#include <set>
#include <string>

namespace qflab {

/// coeff * log p, kept symbolic.
class LogPMultiple {
 public:
  LogPMultiple(Rational coeff, OddPrime p) : coeff_(std::move(coeff)), p_(p) {}

  const Rational& coeff() const { return coeff_; }
  OddPrime prime() const { return p_; }
  std::string to_string() const;

  // Mixing primes throws std::invalid_argument.
  friend LogPMultiple operator+(const LogPMultiple& a, const LogPMultiple& b);
  friend LogPMultiple operator-(const LogPMultiple& a, const LogPMultiple& b);
  friend LogPMultiple operator*(const LogPMultiple& a, const Rational& c) { return {a.coeff_ * c, a.p_}; }
  friend LogPMultiple operator*(const Rational& c, const LogPMultiple& a) { return a * c; }
  /// Throws std::domain_error on division by zero.
  friend LogPMultiple operator/(const LogPMultiple& a, const Rational& c);
  friend bool operator==(const LogPMultiple& a, const LogPMultiple& b) {
    return a.p_.value() == b.p_.value() && a.coeff_ == b.coeff_;
  }

 private:
  Rational coeff_;
  OddPrime p_;
};

/// W_T(e, r) = density of T against the split lattice with r extra planes.
/// Zero for T that is not p-integral. Uses the closed form when T has a
/// unimodular entry and represents 1; the reduction formula with the counting
/// oracle when its unimodular part is a single nonsquare; the oracle directly
/// otherwise (which can throw BudgetExceeded).
/// Throws std::invalid_argument for singular or non-rank-4 T.
Rational whittaker_value(const SymMat& T, OddPrime p, int r = 0);

/// -log p * dA/dX at X = 1. Throws std::invalid_argument with "derivative
/// identity requires Diff(T) to contain p" when V(Q_p) represents T.
LogPMultiple whittaker_derivative(const SymMat& T, OddPrime p);

/// p^{-4} times the twisted density.
Rational whittaker_twisted_value(const SymMat& T, OddPrime p);

/// (1 - p^{-4})(1 - p^{-2}) / (p^{-4} (1 - p^{-2}) 2 (p + 1)), computed from its factors.
Rational volume_ratio(OddPrime p);
/// (p^2 + 1)(p - 1) / 2.
Rational volume_ratio_closed(OddPrime p);

struct RatioReport {
  SymMat T;
  OddPrime p{3};
  LogPMultiple lhs{0, OddPrime(3)};  // W' / W_twisted
  Rational rhs;                      // (p^2 + 1)(p - 1) e_p / 2
  Rational e_p;
  bool e_p_integral = true;
  bool equal = false;
  std::set<Place> diff;  // against the split incoherent collection
};

/// Checks W' / W_twisted = (1/2) log p (p^2 + 1)(p - 1) e_p(T). Throws
/// std::invalid_argument naming the failed precondition: "T is not
/// p-integral", "T is singular", "T does not represent 1 over Z_p" or
/// "T is represented by V(Q_p)".
RatioReport verify_ratio_identity(const SymMat& T, OddPrime p);

}  // namespace qflab
