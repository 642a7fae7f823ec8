#include "qflab/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace qflab {

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& x) {
  return numerator_of(x).str() + "/" + denominator_of(x).str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9')
      throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return Integer(digits);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view t = trim(text);
  const auto slash = t.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(t, text));
  Integer num = parse_integer(trim(t.substr(0, slash)), text);
  Integer den = parse_integer(trim(t.substr(slash + 1)), text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

Rational rational_pow(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("negative power of zero");
    return 1 / rational_pow(base, -exponent);
  }
  Rational result = 1;
  Rational b = base;
  unsigned e = static_cast<unsigned>(exponent);
  while (e) {
    if (e & 1U) result *= b;
    b *= b;
    e >>= 1U;
  }
  return result;
}

Integer integer_pow(std::int64_t base, unsigned exponent) {
  Integer result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

std::uint64_t reduce_mod(const Rational& x, std::uint64_t modulus) {
  const Integer m = modulus;
  Integer num = numerator_of(x) % m;
  if (num < 0) num += m;
  Integer den = denominator_of(x) % m;
  Integer inv;
  // gcd check via mpz_invert
  if (modulus == 1) return 0;
  if (mpz_invert(inv.backend().data(), den.backend().data(), m.backend().data()) == 0)
    throw std::domain_error("denominator not invertible modulo " + std::to_string(modulus));
  Integer r = (num * inv) % m;
  return r.convert_to<std::uint64_t>();
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::int64_t> prime_factors(Integer n) {
  if (n < 0) n = -n;
  if (n == 0) throw std::domain_error("prime_factors of zero");
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; Integer(d) * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) {
    if (n > Integer(std::numeric_limits<std::int64_t>::max()))
      throw std::domain_error("prime factor exceeds 64 bits");
    out.push_back(n.convert_to<std::int64_t>());
  }
  return out;
}

}  // namespace qflab
