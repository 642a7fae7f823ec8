#include "qflab/padic.hpp"

#include <stdexcept>

namespace qflab {

namespace {

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  __int128 result = 1;
  __int128 b = ((base % mod) + mod) % mod;
  while (exp > 0) {
    if (exp & 1) result = (result * b) % mod;
    b = (b * b) % mod;
    exp >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

// Legendre symbol of an integer prime to p.
int legendre(const Integer& n, std::int64_t p) {
  Integer r = n % p;
  if (r < 0) r += p;
  const auto e = mod_pow(r.convert_to<std::int64_t>(), (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

// Residue of an odd integer modulo 8.
int mod8(const Integer& n) {
  Integer r = n % 8;
  if (r < 0) r += 8;
  return r.convert_to<int>();
}

}  // namespace

OddPrime::OddPrime(std::int64_t p) : p_(p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("not an odd prime: " + std::to_string(p));
}

std::int64_t OddPrime::least_nonsquare() const {
  for (std::int64_t u = 2; u < p_; ++u)
    if (mod_pow(u, (p_ - 1) / 2, p_) != 1) return u;
  throw std::logic_error("no nonsquare found");
}

Place Place::finite(std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("place must be prime: " + std::to_string(p));
  Place v;
  v.prime_ = p;
  return v;
}

int valuation(const Integer& x, std::int64_t p) {
  if (x == 0) throw std::domain_error("valuation of zero undefined");
  Integer n = x;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int valuation(const Rational& x, std::int64_t p) {
  if (x == 0) throw std::domain_error("valuation of zero undefined");
  return valuation(numerator_of(x), p) - valuation(denominator_of(x), p);
}

Rational unit_part(const Rational& x, std::int64_t p) {
  return x / rational_pow(Rational(p), valuation(x, p));
}

bool is_p_integral(const Rational& x, std::int64_t p) { return denominator_of(x) % p != 0; }

UnitClass chi(const Rational& u, OddPrime p) {
  if (u == 0 || valuation(u, p) != 0) throw std::domain_error("chi requires a p-adic unit");
  return UnitClass(legendre(numerator_of(u), p) * legendre(denominator_of(u), p));
}

SquareClass square_class(const Rational& x, OddPrime p) {
  const int v = valuation(x, p);
  return {((v % 2) + 2) % 2, chi(unit_part(x, p), p)};
}

Sign hilbert(const Rational& a, const Rational& b, const Place& v) {
  if (a == 0 || b == 0) throw std::domain_error("Hilbert symbol of zero");
  if (v.is_infinite()) return Sign((a < 0 && b < 0) ? -1 : 1);

  const std::int64_t p = v.prime();
  const int alpha = valuation(a, p);
  const int beta = valuation(b, p);
  const Rational u = unit_part(a, p);
  const Rational w = unit_part(b, p);

  if (p == 2) {
    // u, w are odd: reduce numerator * denominator (den^2 = 1 mod 8)
    const int u8 = mod8(numerator_of(u) * denominator_of(u));
    const int w8 = mod8(numerator_of(w) * denominator_of(w));
    const auto eps = [](int x) { return ((x - 1) / 2) % 2; };
    const auto omega = [](int x) { return ((x * x - 1) / 8) % 2; };
    const int e = eps(u8) * eps(w8) + alpha * omega(w8) + beta * omega(u8);
    return Sign((e % 2 == 0) ? 1 : -1);
  }

  const OddPrime q(p);
  int sign = 1;
  if ((alpha * beta) % 2 != 0 && ((p - 1) / 2) % 2 != 0) sign = -sign;
  if (beta % 2 != 0) sign *= chi(u, q).value();
  if (alpha % 2 != 0) sign *= chi(w, q).value();
  return Sign(sign);
}

bool same_square_class(const Rational& a, const Rational& b, const Place& v) {
  if (a == 0 || b == 0) throw std::domain_error("square class of zero");
  const Rational r = a / b;
  if (v.is_infinite()) return r > 0;
  const std::int64_t p = v.prime();
  if (valuation(r, p) % 2 != 0) return false;
  const Rational u = unit_part(r, p);
  if (p == 2) return mod8(numerator_of(u) * denominator_of(u)) == 1;
  return chi(u, OddPrime(p)).is_plus();
}

}  // namespace qflab
