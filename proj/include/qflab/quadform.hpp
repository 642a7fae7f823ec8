#pragma once

// Symmetric forms over Q and Z_p (p odd): Jordan splittings, local invariants,
// local representation tests and the concrete spaces used by the density code.

#include "qflab/padic.hpp"
#include "qflab/quaternion.hpp"
#include "qflab/rational.hpp"

#include <set>
#include <span>
#include <vector>

namespace qflab {

/// Gram matrix of a symmetric form with exact rational entries.
using SymMat = RationalMatrix;

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

/// Exact determinant by fraction-free elimination over the scalar field.
template <typename Derived>
typename Derived::Scalar exact_determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  MatrixX<Scalar> a = m;
  const Eigen::Index n = a.rows();
  Scalar det = 1;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index pivot = c;
    while (pivot < n && a(pivot, c) == 0) ++pivot;
    if (pivot == n) return Scalar(0);
    if (pivot != c) {
      a.row(pivot).swap(a.row(c));
      det = -det;
    }
    det *= a(c, c);
    for (Eigen::Index r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      const Scalar f = a(r, c) / a(c, c);
      a.row(r) -= f * a.row(c);
    }
  }
  return det;
}

SymMat diagonal_matrix(std::span<const Rational> entries);
SymMat diagonal_matrix(std::initializer_list<Rational> entries);

/// Throws std::invalid_argument unless m is square and symmetric.
void require_symmetric(const SymMat& m);

bool is_p_integral(const SymMat& m, std::int64_t p);
bool is_nonsingular(const SymMat& m);

/// Rank of an integral-at-p matrix reduced modulo p.
int rank_mod_p(const SymMat& m, OddPrime p);

/// A diagonalization <d_1, ..., d_n> of the form over Q (congruence by a
/// rational change of basis). Zero entries appear for singular input.
std::vector<Rational> rational_diagonalization(const SymMat& m);

struct JordanTerm {
  int exponent;
  UnitClass eps;
  friend bool operator==(const JordanTerm&, const JordanTerm&) = default;
};

/// diag(eps_i p^{a_i}) with a_i nondecreasing. Within one exponent block every
/// unit class is +1 except possibly the last, which carries the block's
/// determinant class; this is the canonical representative.
struct JordanDiagonal {
  std::int64_t p;
  std::vector<JordanTerm> terms;

  int rank() const { return static_cast<int>(terms.size()); }
  int max_exponent() const;
  int total_exponent() const;
  SymMat as_matrix() const;
  /// Product of unit classes of the block with the given exponent (+1 if empty).
  UnitClass block_class(int exponent) const;
  int block_rank(int exponent) const;
  friend bool operator==(const JordanDiagonal&, const JordanDiagonal&) = default;
};

/// Jordan splitting over Z_p. Throws std::invalid_argument for singular input
/// ("Jordan form requires nonsingular input") or entries that are not p-integral.
JordanDiagonal jordan_diagonalize(const SymMat& T, OddPrime p);

/// Puts a list of (exponent, class) pairs into canonical Jordan order.
JordanDiagonal canonical_jordan(std::int64_t p, std::vector<JordanTerm> terms);

struct Signature {
  int positive = 0;
  int negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// prod_{i<j} (d_i, d_j)_v.
Sign hasse_invariant(std::span<const Rational> diagonal, const Place& v);

/// A nonsingular quadratic space over Q, viewed locally at any place.
class QuadSpace {
 public:
  /// Throws std::invalid_argument for non-symmetric or singular Gram matrices.
  explicit QuadSpace(SymMat gram);
  static QuadSpace from_diagonal(std::span<const Rational> entries);
  static QuadSpace from_diagonal(std::initializer_list<Rational> entries);

  const SymMat& gram() const { return gram_; }
  int rank() const { return static_cast<int>(gram_.rows()); }
  const Rational& determinant() const { return det_; }
  const std::vector<Rational>& diagonal() const { return diag_; }
  Signature signature() const { return signature_; }
  Sign hasse(const Place& v) const { return hasse_invariant(diag_, v); }

 private:
  SymMat gram_;
  Rational det_;
  std::vector<Rational> diag_;
  Signature signature_;
};

inline Sign hasse(const QuadSpace& Q, const Place& v) { return Q.hasse(v); }

Signature signature(const SymMat& m);

/// Whether the local space S_v contains a subspace isometric to T_v.
///
/// At a finite place the answer is read off from a complement W with
/// det W = det S * det T (mod squares) and the Hasse invariant forced by
/// c(S) = c(T) c(W) (det T, det W):
///   rank W = 0: S and T must be isometric (det and Hasse agree);
///   rank W = 1: W is determined, so the forced invariant must be +1;
///   rank W = 2: binary forms <x, x d> realise Hasse (x, -d), so every value
///               occurs unless -d is a square, where only +1 occurs;
///   rank W >= 3: always realisable.
/// At infinity the test is containment of signatures.
/// Throws std::invalid_argument if T is singular or rank T > rank S.
bool represents_local(const QuadSpace& S, const SymMat& T, const Place& v);

/// Whether x^t T x = 1 has a solution over Z_p: the unimodular Jordan block has
/// rank >= 2, or rank 1 with square class. Throws for singular or non-p-integral T.
bool represents_one_over_Zp(const SymMat& T, OddPrime p);

/// <1, 1, -1, 1, -1> + r hyperbolic planes <1, -1>: the lattice S_r over Z_p
/// (the half-integral hyperbolic blocks split as <1, -1> since p is odd).
std::vector<Rational> split_lattice_diagonal(int r = 0);

/// H_{2m} as <1, -1, ..., 1, -1>.
std::vector<Rational> hyperbolic_diagonal(int m);

/// The twisted lattice diag(1, 1, beta, p, -p beta), beta the least nonsquare.
std::vector<Rational> twisted_lattice_diagonal(OddPrime p);

/// <1> plus the reduced norm <1, -beta, p, -p beta> of the maximal order of the
/// ramified quaternion algebra. Agrees with twisted_lattice_diagonal up to
/// Z_p-equivalence only when p = 1 mod 4.
std::vector<Rational> maximal_order_lattice_diagonal(OddPrime p);

/// V(Q_p): the space of S_0.
QuadSpace space_v(OddPrime p);

/// V'(Q_p): <1> plus the norm form <1, -beta, -p, p beta> of the ramified
/// quaternion algebra; same determinant as V(Q_p), opposite Hasse invariant.
QuadSpace space_v_prime(OddPrime p);

/// <1> plus the reduced norm of B.
QuadSpace vb_space_diagonal(const QuaternionAlgebra& B);

/// Local data of an incoherent collection attached to an indefinite quaternion
/// algebra: V_B at every finite place, positive definite of rank 5 at infinity.
class IncoherentCollection {
 public:
  /// Throws std::invalid_argument if B is definite.
  explicit IncoherentCollection(QuaternionAlgebra B);
  const QuaternionAlgebra& algebra() const { return B_; }
  const QuadSpace& local_space(const Place& v) const;

 private:
  QuaternionAlgebra B_;
  QuadSpace finite_;
  QuadSpace infinite_;
};

/// Places where the collection fails to represent T. The finite search runs over
/// 2, the primes dividing a, b, the numerator of det(2T) and every denominator
/// of T. Infinity is included exactly when sig(T) is (3,1) or (1,3).
/// Throws std::invalid_argument for singular or non-rank-4 T.
std::set<Place> diff_set(const SymMat& T, const IncoherentCollection& C);

/// True for signatures (2,2) and (0,4), where the infinity clause says nothing.
bool diff_signature_unaddressed(const SymMat& T);

}  // namespace qflab
