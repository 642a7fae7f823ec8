#pragma once

// Quaternion algebras (a, b)_Q: i^2 = a, j^2 = b, k = ij = -ji.

#include "qflab/padic.hpp"
#include "qflab/rational.hpp"

#include <vector>

namespace qflab {

struct QuaternionAlgebra {
  Rational a;
  Rational b;

  /// Throws std::invalid_argument if a or b is zero.
  QuaternionAlgebra(Rational a_, Rational b_);

  static QuaternionAlgebra split() { return {1, 1}; }
  /// Indefinite algebra of discriminant 6, (-1, 3)_Q.
  static QuaternionAlgebra discriminant_six() { return {-1, 3}; }
  /// Hamilton quaternions over Q, (-1, -1)_Q.
  static QuaternionAlgebra definite_hamilton() { return {-1, -1}; }

  friend bool operator==(const QuaternionAlgebra&, const QuaternionAlgebra&) = default;
};

/// Places where B is a division algebra; always even in number.
std::vector<Place> ramified_places(const QuaternionAlgebra& B);

/// Product of the finite ramified primes.
Integer discriminant(const QuaternionAlgebra& B);

bool is_indefinite(const QuaternionAlgebra& B);

/// Diagonal Gram entries of the reduced norm: <1, -a, -b, ab>.
std::vector<Rational> norm_form_diagonal(const QuaternionAlgebra& B);

/// Primes at which B or its structure constants can be nonstandard: 2 and the
/// primes dividing a and b.
std::vector<std::int64_t> bad_primes(const QuaternionAlgebra& B);

}  // namespace qflab
