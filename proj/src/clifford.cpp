#include "qflab/clifford.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qflab {

namespace {

void require_same_algebra(const Quaternion& x, const Quaternion& y) {
  if (!(x.algebra == y.algebra)) throw std::invalid_argument("quaternions belong to different algebras");
}

// Local data of a form that the isotropy tests need.
struct LocalForm {
  int rank;
  Rational det;
  Sign hasse;
};

bool is_local_square(const Rational& x, const Place& v) { return same_square_class(x, Rational(1), v); }

bool isotropic(const LocalForm& f, const Place& v) {
  switch (f.rank) {
    case 0:
    case 1: return false;
    case 2: return is_local_square(-f.det, v);
    case 3: return f.hasse == hilbert(-1, -f.det, v);
    case 4: return !is_local_square(f.det, v) || f.hasse == hilbert(-1, -1, v);
    default: return true;
  }
}

SpinMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  SpinMatrix m;
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (int x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

SpinGenerators make_generators() {
  SpinGenerators g;
  g.sigma[0] = from_rows({{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}});
  g.sigma[1] = from_rows({{0, 0, 0, 0}, {0, 0, 0, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}});
  g.sigma[2] = from_rows({{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}});
  g.sigma[3] = from_rows({{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}});
  g.sigma[4] = from_rows({{0, 0, 0, 1}, {0, 0, -1, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
  g.J = from_rows({{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}});
  g.gram.setZero();
  g.gram(0, 3) = g.gram(3, 0) = 1;
  g.gram(1, 4) = g.gram(4, 1) = 1;
  g.gram(2, 2) = 1;
  return g;
}

std::string word_name(const SpinWord& w) {
  std::string s;
  for (auto g : w) {
    if (!s.empty()) s += ' ';
    s += to_string(g);
  }
  return s.empty() ? "(empty)" : s;
}

}  // namespace

Quaternion Quaternion::basis(const QuaternionAlgebra& B, int index) {
  if (index < 0 || index > 3) throw std::invalid_argument("quaternion basis index must be 0..3");
  Quaternion q{B, {0, 0, 0, 0}};
  q.x[static_cast<std::size_t>(index)] = 1;
  return q;
}

Quaternion quat_add(const Quaternion& x, const Quaternion& y) {
  require_same_algebra(x, y);
  Quaternion z = x;
  for (std::size_t i = 0; i < 4; ++i) z.x[i] += y.x[i];
  return z;
}

Quaternion quat_mul(const Quaternion& x, const Quaternion& y) {
  require_same_algebra(x, y);
  const Rational& a = x.algebra.a;
  const Rational& b = x.algebra.b;
  const auto& u = x.x;
  const auto& w = y.x;
  return {x.algebra,
          {u[0] * w[0] + a * u[1] * w[1] + b * u[2] * w[2] - a * b * u[3] * w[3],
           u[0] * w[1] + u[1] * w[0] - b * u[2] * w[3] + b * u[3] * w[2],
           u[0] * w[2] + u[2] * w[0] + a * u[1] * w[3] - a * u[3] * w[1],
           u[0] * w[3] + u[3] * w[0] + u[1] * w[2] - u[2] * w[1]}};
}

Quaternion quat_conj(const Quaternion& x) { return {x.algebra, {x.x[0], -x.x[1], -x.x[2], -x.x[3]}}; }

Rational quat_norm(const Quaternion& x) {
  const Rational& a = x.algebra.a;
  const Rational& b = x.algebra.b;
  return x.x[0] * x.x[0] - a * x.x[1] * x.x[1] - b * x.x[2] * x.x[2] + a * b * x.x[3] * x.x[3];
}

Rational quat_trace(const Quaternion& x) { return 2 * x.x[0]; }

QuadSpace vb_space(const QuaternionAlgebra& B) { return vb_space_diagonal(B); }

int local_witt_index(const QuadSpace& V, const Place& v) {
  if (v.is_infinite()) {
    const Signature s = V.signature();
    return std::min(s.positive, s.negative);
  }
  LocalForm f{V.rank(), V.determinant(), V.hasse(v)};
  int index = 0;
  while (isotropic(f, v)) {
    // V = H + W: det W = -det V, c(V) = c(W) (-1, det W)
    const Rational det_w = -f.det;
    f = LocalForm{f.rank - 2, det_w, f.hasse * hilbert(-1, det_w, v)};
    ++index;
  }
  return index;
}

int rational_witt_index(const QuadSpace& V) {
  std::set<std::int64_t> primes{2};
  for (const auto& d : V.diagonal()) {
    for (auto q : prime_factors(numerator_of(d))) primes.insert(q);
    for (auto q : prime_factors(denominator_of(d))) primes.insert(q);
  }
  int index = local_witt_index(V, Place::infinity());
  for (auto q : primes) index = std::min(index, local_witt_index(V, Place::finite(q)));
  return index;
}

std::string_view to_string(SpinGenerator g) {
  switch (g) {
    case SpinGenerator::e0: return "e0";
    case SpinGenerator::e1: return "e1";
    case SpinGenerator::v0: return "v0";
    case SpinGenerator::f0: return "f0";
    case SpinGenerator::f1: return "f1";
  }
  return "?";
}

const SpinGenerators& spin_generators() {
  static const SpinGenerators g = make_generators();
  return g;
}

SpinMatrix spin_image(const SpinWord& word) {
  SpinMatrix m = SpinMatrix::Identity();
  for (auto g : word) m = m * spin_generators()[g];
  return m;
}

SpinCheck check_clifford_relations() {
  const auto& g = spin_generators();
  SpinCheck out;
  for (int i = 0; i < 5; ++i) {
    for (int j = i; j < 5; ++j) {
      const SpinMatrix& x = g.sigma[static_cast<std::size_t>(i)];
      const SpinMatrix& y = g.sigma[static_cast<std::size_t>(j)];
      const SpinMatrix lhs = i == j ? SpinMatrix(x * x) : SpinMatrix(x * y + y * x);
      if (lhs != g.gram(i, j) * SpinMatrix::Identity()) {
        out.ok = false;
        out.failures.push_back("relation " + std::string(to_string(static_cast<SpinGenerator>(i))) + " " +
                               std::string(to_string(static_cast<SpinGenerator>(j))));
      }
    }
  }
  return out;
}

SpinCheck check_spin_compatibility(const std::vector<SpinWord>& words) {
  const auto& g = spin_generators();
  // J^{-1} = -J
  const SpinMatrix J_inv = -g.J;
  SpinCheck out = check_clifford_relations();
  for (const auto& w : words) {
    SpinWord reversed(w.rbegin(), w.rend());
    if (g.J * spin_image(w).transpose() * J_inv != spin_image(reversed)) {
      out.ok = false;
      out.failures.push_back("word " + word_name(w));
    }
  }
  return out;
}

std::string_view to_string(InvolutionType t) { return t == InvolutionType::main ? "main" : "neben"; }

InvolutionType involution_tensor_type(InvolutionType t1, InvolutionType t2) {
  return t1 == t2 ? InvolutionType::neben : InvolutionType::main;
}

bool positive_involution_criterion(RealQuaternionType type, const InvolutionDescriptor& tau) {
  if (tau.conj_sign != 1 && tau.conj_sign != -1) throw std::invalid_argument("conj_sign must be +1 or -1");
  if (tau.square_sign && *tau.square_sign != 1 && *tau.square_sign != -1)
    throw std::invalid_argument("square_sign must be +1 or -1");
  // tau^iota = tau makes tau real, so tau^2 > 0
  if (tau.conj_sign == 1 && tau.square_sign == -1) throw std::invalid_argument("a real tau has positive square");
  if (type == RealQuaternionType::division) {
    // pure quaternions in H square to minus their norm
    if (tau.conj_sign == -1 && tau.square_sign == 1) throw std::invalid_argument("a pure quaternion in H has negative square");
    return tau.conj_sign == 1;
  }
  if (tau.conj_sign == 1) return false;
  if (!tau.square_sign) throw std::invalid_argument("split case needs the sign of tau^2");
  return *tau.square_sign == -1;
}

}  // namespace qflab
