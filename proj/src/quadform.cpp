#include "qflab/quadform.hpp"

#include <algorithm>
#include <stdexcept>

namespace qflab {

SymMat diagonal_matrix(std::span<const Rational> entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  SymMat m = SymMat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
  return m;
}

SymMat diagonal_matrix(std::initializer_list<Rational> entries) {
  return diagonal_matrix(std::span<const Rational>(entries.begin(), entries.size()));
}

void require_symmetric(const SymMat& m) {
  if (m.rows() == 0 || !is_symmetric(m)) throw std::invalid_argument("matrix must be square and symmetric");
}

bool is_p_integral(const SymMat& m, std::int64_t p) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!is_p_integral(m(i, j), p)) return false;
  return true;
}

bool is_nonsingular(const SymMat& m) { return exact_determinant(m) != 0; }

int rank_mod_p(const SymMat& m, OddPrime p) {
  if (!is_p_integral(m, p)) throw std::invalid_argument("rank mod p needs a p-integral matrix");
  const auto P = static_cast<std::uint64_t>(p.value());
  const auto rows = m.rows();
  const auto cols = m.cols();
  std::vector<std::vector<std::int64_t>> a(static_cast<std::size_t>(rows),
                                           std::vector<std::int64_t>(static_cast<std::size_t>(cols)));
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a[i][j] = static_cast<std::int64_t>(reduce_mod(m(i, j), P));

  const auto inverse = [&](std::int64_t x) {
    std::int64_t r = 1, b = x, e = p.value() - 2;
    while (e) {
      if (e & 1) r = r * b % p.value();
      b = b * b % p.value();
      e >>= 1;
    }
    return r;
  };

  int rank = 0;
  for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
    Eigen::Index pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    const std::int64_t inv = inverse(a[rank][c]);
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      const std::int64_t f = a[r][c] * inv % p.value();
      for (Eigen::Index k = c; k < cols; ++k)
        a[r][k] = ((a[r][k] - f * a[rank][k]) % p.value() + p.value()) % p.value();
    }
    ++rank;
  }
  return rank;
}

namespace {

// Congruence operation e_i -> e_i + e_j.
void add_basis_vector(SymMat& a, Eigen::Index i, Eigen::Index j) {
  a.row(i) += a.row(j);
  a.col(i) += a.col(j);
}

void swap_basis_vectors(SymMat& a, Eigen::Index i, Eigen::Index j) {
  if (i == j) return;
  a.row(i).swap(a.row(j));
  a.col(i).swap(a.col(j));
}

// Clears row/column k beyond the pivot a(k,k) != 0.
void split_off(SymMat& a, Eigen::Index k) {
  for (Eigen::Index j = k + 1; j < a.rows(); ++j) {
    if (a(j, k) == 0) continue;
    const Rational f = a(j, k) / a(k, k);
    a.row(j) -= f * a.row(k);
    a.col(j) -= f * a.col(k);
  }
}

}  // namespace

std::vector<Rational> rational_diagonalization(const SymMat& m) {
  require_symmetric(m);
  SymMat a = m;
  const Eigen::Index n = a.rows();
  std::vector<Rational> out;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = k; i < n && pivot < 0; ++i)
      if (a(i, i) != 0) pivot = i;
    if (pivot < 0) {
      for (Eigen::Index i = k; i < n && pivot < 0; ++i)
        for (Eigen::Index j = i + 1; j < n && pivot < 0; ++j)
          if (a(i, j) != 0) {
            add_basis_vector(a, i, j);  // a(i,i) becomes 2 a(i,j)
            pivot = i;
          }
    }
    if (pivot < 0) {
      for (; k < n; ++k) out.emplace_back(0);
      break;
    }
    swap_basis_vectors(a, k, pivot);
    split_off(a, k);
    out.push_back(a(k, k));
  }
  return out;
}

int JordanDiagonal::max_exponent() const {
  int m = 0;
  for (const auto& t : terms) m = std::max(m, t.exponent);
  return m;
}

int JordanDiagonal::total_exponent() const {
  int s = 0;
  for (const auto& t : terms) s += t.exponent;
  return s;
}

SymMat JordanDiagonal::as_matrix() const {
  std::vector<Rational> d;
  const std::int64_t u = OddPrime(p).least_nonsquare();
  for (const auto& t : terms) d.push_back(Rational(t.eps.is_plus() ? 1 : u) * rational_pow(Rational(p), t.exponent));
  return diagonal_matrix(d);
}

UnitClass JordanDiagonal::block_class(int exponent) const {
  UnitClass c = UnitClass::plus();
  for (const auto& t : terms)
    if (t.exponent == exponent) c = c * t.eps;
  return c;
}

int JordanDiagonal::block_rank(int exponent) const {
  return static_cast<int>(std::count_if(terms.begin(), terms.end(), [&](const JordanTerm& t) { return t.exponent == exponent; }));
}

JordanDiagonal canonical_jordan(std::int64_t p, std::vector<JordanTerm> terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const JordanTerm& x, const JordanTerm& y) { return x.exponent < y.exponent; });
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    UnitClass product = UnitClass::plus();
    while (j < terms.size() && terms[j].exponent == terms[i].exponent) product = product * terms[j++].eps;
    for (std::size_t k = i; k + 1 < j; ++k) terms[k].eps = UnitClass::plus();
    terms[j - 1].eps = product;
    i = j;
  }
  return {p, std::move(terms)};
}

JordanDiagonal jordan_diagonalize(const SymMat& T, OddPrime p) {
  require_symmetric(T);
  if (!is_p_integral(T, p)) throw std::invalid_argument("Jordan form requires p-integral entries");
  if (!is_nonsingular(T)) throw std::invalid_argument("Jordan form requires nonsingular input");

  SymMat a = T;
  const Eigen::Index n = a.rows();
  std::vector<JordanTerm> terms;
  for (Eigen::Index k = 0; k < n; ++k) {
    int best = INT32_MAX;
    Eigen::Index bi = -1, bj = -1;
    int best_diag = INT32_MAX;
    Eigen::Index di = -1;
    for (Eigen::Index i = k; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        if (a(i, j) == 0) continue;
        const int v = valuation(a(i, j), p);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
        if (i == j && v < best_diag) {
          best_diag = v;
          di = i;
        }
      }
    }
    if (bi < 0) throw std::logic_error("singular block during Jordan splitting");
    if (best_diag > best) {
      // only an off-diagonal entry attains the minimum; since p is odd,
      // e_i -> e_i + e_j makes the new diagonal entry 2 a(i,j) + (higher terms)
      add_basis_vector(a, bi, bj);
      di = bi;
    }
    swap_basis_vectors(a, k, di);
    split_off(a, k);
    const int e = valuation(a(k, k), p);
    terms.push_back({e, chi(unit_part(a(k, k), p), p)});
  }
  return canonical_jordan(p, std::move(terms));
}

Sign hasse_invariant(std::span<const Rational> diagonal, const Place& v) {
  Sign s = Sign::plus();
  for (std::size_t i = 0; i < diagonal.size(); ++i)
    for (std::size_t j = i + 1; j < diagonal.size(); ++j) s = s * hilbert(diagonal[i], diagonal[j], v);
  return s;
}

Signature signature(const SymMat& m) {
  Signature s;
  for (const auto& d : rational_diagonalization(m)) {
    if (d > 0) ++s.positive;
    else if (d < 0) ++s.negative;
  }
  return s;
}

QuadSpace::QuadSpace(SymMat gram) : gram_(std::move(gram)) {
  require_symmetric(gram_);
  det_ = exact_determinant(gram_);
  if (det_ == 0) throw std::invalid_argument("quadratic space must be nonsingular");
  diag_ = rational_diagonalization(gram_);
  for (const auto& d : diag_) (d > 0 ? signature_.positive : signature_.negative)++;
}

QuadSpace QuadSpace::from_diagonal(std::span<const Rational> entries) { return QuadSpace(diagonal_matrix(entries)); }

QuadSpace QuadSpace::from_diagonal(std::initializer_list<Rational> entries) {
  return QuadSpace(diagonal_matrix(entries));
}

bool represents_local(const QuadSpace& S, const SymMat& T, const Place& v) {
  require_symmetric(T);
  const int k = static_cast<int>(T.rows());
  if (k > S.rank()) throw std::invalid_argument("target rank exceeds the rank of the space");
  const Rational detT = exact_determinant(T);
  if (detT == 0) throw std::invalid_argument("represents_local requires a nonsingular target");

  if (v.is_infinite()) {
    const Signature st = signature(T);
    const Signature ss = S.signature();
    return st.positive <= ss.positive && st.negative <= ss.negative;
  }

  const std::vector<Rational> tdiag = rational_diagonalization(T);
  const int complement = S.rank() - k;
  if (complement == 0) return same_square_class(S.determinant(), detT, v) && S.hasse(v) == hasse_invariant(tdiag, v);

  const Rational d = S.determinant() * detT;  // det W mod squares
  const Sign forced = S.hasse(v) * hasse_invariant(tdiag, v) * hilbert(detT, d, v);
  if (complement == 1) return forced.is_plus();
  if (complement == 2) return forced.is_plus() || !same_square_class(-d, Rational(1), v);
  return true;
}

bool represents_one_over_Zp(const SymMat& T, OddPrime p) {
  const JordanDiagonal J = jordan_diagonalize(T, p);
  const int unimodular = J.block_rank(0);
  if (unimodular >= 2) return true;
  return unimodular == 1 && J.block_class(0).is_plus();
}

std::vector<Rational> split_lattice_diagonal(int r) {
  if (r < 0) throw std::invalid_argument("r must be nonnegative");
  std::vector<Rational> d{1, 1, -1, 1, -1};
  for (int i = 0; i < r; ++i) {
    d.emplace_back(1);
    d.emplace_back(-1);
  }
  return d;
}

std::vector<Rational> hyperbolic_diagonal(int m) {
  std::vector<Rational> d;
  for (int i = 0; i < m; ++i) {
    d.emplace_back(1);
    d.emplace_back(-1);
  }
  return d;
}

std::vector<Rational> twisted_lattice_diagonal(OddPrime p) {
  const Rational beta = p.least_nonsquare();
  const Rational P = p.value();
  return {1, 1, beta, P, -P * beta};
}

std::vector<Rational> maximal_order_lattice_diagonal(OddPrime p) {
  const Rational beta = p.least_nonsquare();
  const Rational P = p.value();
  return {1, 1, -beta, P, -P * beta};
}

QuadSpace space_v(OddPrime) { return QuadSpace::from_diagonal(split_lattice_diagonal(0)); }

QuadSpace space_v_prime(OddPrime p) {
  const Rational beta = p.least_nonsquare();
  const Rational P = p.value();
  return QuadSpace::from_diagonal({1, 1, -beta, -P, P * beta});
}

QuadSpace vb_space_diagonal(const QuaternionAlgebra& B) {
  std::vector<Rational> d{1};
  for (auto& x : norm_form_diagonal(B)) d.push_back(x);
  return QuadSpace::from_diagonal(d);
}

IncoherentCollection::IncoherentCollection(QuaternionAlgebra B)
    : B_(std::move(B)),
      finite_(vb_space_diagonal(B_)),
      infinite_(QuadSpace::from_diagonal({1, 1, 1, 1, 1})) {
  if (!is_indefinite(B_)) throw std::invalid_argument("incoherent collection needs an indefinite quaternion algebra");
}

const QuadSpace& IncoherentCollection::local_space(const Place& v) const {
  return v.is_infinite() ? infinite_ : finite_;
}

std::set<Place> diff_set(const SymMat& T, const IncoherentCollection& C) {
  require_symmetric(T);
  if (T.rows() != 4) throw std::invalid_argument("Diff needs a rank-4 target");
  const Rational det = exact_determinant(T);
  if (det == 0) throw std::invalid_argument("Diff requires nonsingular T");

  std::vector<std::int64_t> primes = bad_primes(C.algebra());
  for (auto q : prime_factors(numerator_of(det * 16))) primes.push_back(q);
  for (Eigen::Index i = 0; i < T.rows(); ++i)
    for (Eigen::Index j = 0; j < T.cols(); ++j)
      for (auto q : prime_factors(denominator_of(T(i, j)))) primes.push_back(q);
  for (auto q : prime_factors(denominator_of(det))) primes.push_back(q);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  std::set<Place> out;
  for (auto q : primes) {
    const Place v = Place::finite(q);
    if (!represents_local(C.local_space(v), T, v)) out.insert(v);
  }
  const Signature s = signature(T);
  if ((s.positive == 3 && s.negative == 1) || (s.positive == 1 && s.negative == 3)) out.insert(Place::infinity());
  return out;
}

bool diff_signature_unaddressed(const SymMat& T) {
  const Signature s = signature(T);
  return (s.positive == 2 && s.negative == 2) || (s.positive == 0 && s.negative == 4);
}

}  // namespace qflab
