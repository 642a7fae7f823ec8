#include "qflab/quaternion.hpp"

#include <algorithm>
#include <stdexcept>

namespace qflab {

QuaternionAlgebra::QuaternionAlgebra(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {
  if (a == 0 || b == 0) throw std::invalid_argument("quaternion algebra needs nonzero structure constants");
}

std::vector<std::int64_t> bad_primes(const QuaternionAlgebra& B) {
  std::vector<std::int64_t> primes{2};
  for (const Rational* x : {&B.a, &B.b}) {
    for (const Integer& n : {numerator_of(*x), denominator_of(*x)}) {
      for (auto q : prime_factors(n)) primes.push_back(q);
    }
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

std::vector<Place> ramified_places(const QuaternionAlgebra& B) {
  std::vector<Place> out;
  for (auto q : bad_primes(B)) {
    const Place v = Place::finite(q);
    if (!hilbert(B.a, B.b, v).is_plus()) out.push_back(v);
  }
  if (!hilbert(B.a, B.b, Place::infinity()).is_plus()) out.push_back(Place::infinity());
  return out;
}

Integer discriminant(const QuaternionAlgebra& B) {
  Integer d = 1;
  for (const auto& v : ramified_places(B))
    if (!v.is_infinite()) d *= v.prime();
  return d;
}

bool is_indefinite(const QuaternionAlgebra& B) { return hilbert(B.a, B.b, Place::infinity()).is_plus(); }

std::vector<Rational> norm_form_diagonal(const QuaternionAlgebra& B) {
  return {Rational(1), -B.a, -B.b, B.a * B.b};
}

}  // namespace qflab
