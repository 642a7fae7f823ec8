#pragma once

// Exact scalar types shared by every module. Rationals are GMP-backed and
// plug into Eigen through Boost.Multiprecision's NumTraits specialisation.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qflab {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = MatrixX<Rational>;
using RationalVector = VectorX<Rational>;

inline Integer numerator_of(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer denominator_of(const Rational& x) { return boost::multiprecision::denominator(x); }

/// "num/den" with den > 0; integers are still printed with "/1".
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

/// Parses "a", "-a/b" or "a/b". Throws std::invalid_argument on malformed text
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// p^e for an integer e of either sign.
Rational rational_pow(const Rational& base, int exponent);
Integer integer_pow(std::int64_t base, unsigned exponent);

/// Reduction of a p-integral rational modulo `modulus` into [0, modulus).
/// Throws std::domain_error when the denominator is not invertible.
std::uint64_t reduce_mod(const Rational& x, std::uint64_t modulus);

/// Distinct prime factors by trial division (|n| >= 1).
std::vector<std::int64_t> prime_factors(Integer n);

bool is_prime(std::int64_t n);

}  // namespace qflab
