#pragma once

// Valuations, unit square classes and Hilbert symbols at the places of Q.

#include "qflab/rational.hpp"

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace qflab {

/// A sign in {+1, -1}.
class Sign {
 public:
  constexpr Sign() = default;
  constexpr explicit Sign(int v) : value_(v < 0 ? -1 : 1) {}
  static constexpr Sign plus() { return Sign(1); }
  static constexpr Sign minus() { return Sign(-1); }

  constexpr int value() const { return value_; }
  constexpr bool is_plus() const { return value_ > 0; }
  constexpr Sign operator-() const { return Sign(-value_); }
  friend constexpr Sign operator*(Sign a, Sign b) { return Sign(a.value_ * b.value_); }
  friend constexpr bool operator==(Sign, Sign) = default;

 private:
  int value_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, Sign s) { return os << (s.is_plus() ? "+1" : "-1"); }

/// Class of a p-adic unit modulo squares; +1 means square.
using UnitClass = Sign;

class OddPrime {
 public:
  /// Throws std::invalid_argument unless p is an odd prime.
  explicit OddPrime(std::int64_t p);
  constexpr std::int64_t value() const { return p_; }
  constexpr operator std::int64_t() const { return p_; }

  /// Least positive quadratic non-residue modulo p.
  std::int64_t least_nonsquare() const;

 private:
  std::int64_t p_;
};

class Place {
 public:
  static Place infinity() { return Place(); }
  /// Throws std::invalid_argument unless p is prime.
  static Place finite(std::int64_t p);

  bool is_infinite() const { return prime_ == 0; }
  std::int64_t prime() const { return prime_; }
  std::string name() const { return is_infinite() ? "inf" : std::to_string(prime_); }

  friend auto operator<=>(const Place& a, const Place& b) {
    // finite places first, in increasing order, then infinity
    const auto key = [](const Place& v) { return v.is_infinite() ? INT64_MAX : v.prime_; };
    return key(a) <=> key(b);
  }
  friend bool operator==(const Place&, const Place&) = default;

 private:
  Place() = default;
  std::int64_t prime_ = 0;
};

/// v_p(x). Throws std::domain_error("valuation of zero undefined") for x == 0.
int valuation(const Rational& x, std::int64_t p);
int valuation(const Integer& x, std::int64_t p);

/// x * p^{-v_p(x)}.
Rational unit_part(const Rational& x, std::int64_t p);

/// True when the denominator of x is prime to p.
bool is_p_integral(const Rational& x, std::int64_t p);

/// Legendre symbol of a p-adic unit. Throws std::domain_error
/// ("chi requires a p-adic unit") otherwise.
UnitClass chi(const Rational& u, OddPrime p);

/// Local Hilbert symbol (a, b)_v. Throws std::domain_error for a zero argument.
Sign hilbert(const Rational& a, const Rational& b, const Place& v);

/// Square class of a nonzero rational at an odd prime: (parity of v_p, chi of unit part).
struct SquareClass {
  int parity;
  UnitClass unit;
  friend bool operator==(const SquareClass&, const SquareClass&) = default;
};
SquareClass square_class(const Rational& x, OddPrime p);

/// True when a/b is a square in Q_v.
bool same_square_class(const Rational& a, const Rational& b, const Place& v);

}  // namespace qflab
