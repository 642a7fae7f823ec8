#include "qflab/cycles.hpp"

#include "qflab/gkmult.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qflab {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t p) {
  const std::int64_t r = x % p;
  return r < 0 ? r + p : r;
}

bool is_square_mod(std::int64_t x, std::int64_t p) {
  x = mod(x, p);
  if (x == 0) return true;
  for (std::int64_t y = 1; y < p; ++y)
    if (y * y % p == x) return true;
  return false;
}

[[noreturn]] void inconsistent(const std::string& why) {
  throw std::invalid_argument("inconsistent component data: " + why);
}

}  // namespace

BlockSpec::BlockSpec(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw std::invalid_argument("block sizes must be nonempty");
  for (int s : sizes_)
    if (s < 1 || s > 4) throw std::invalid_argument("block sizes must lie in [1, 4]");
  if (std::accumulate(sizes_.begin(), sizes_.end(), 0) != 4) throw std::invalid_argument("block sizes must sum to 4");
}

std::vector<SymMat> extract_blocks(const SymMat& T, const BlockSpec& spec) {
  require_symmetric(T);
  if (T.rows() != 4) throw std::invalid_argument("block sizes must sum to the rank of T");
  std::vector<SymMat> out;
  Eigen::Index start = 0;
  for (int s : spec.sizes()) {
    out.emplace_back(T.block(start, start, s, s));
    start += s;
  }
  return out;
}

bool admissible_for(const SymMat& T, const std::vector<SymMat>& blocks) {
  std::vector<int> sizes;
  for (const auto& b : blocks) sizes.push_back(static_cast<int>(b.rows()));
  const auto mine = extract_blocks(T, BlockSpec(sizes));
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (mine[i] != blocks[i]) return false;
  return true;
}

bool is_isolated(const SymMat& T, OddPrime p) {
  require_symmetric(T);
  if (!is_p_integral(T, p)) throw std::invalid_argument("isolation test requires p-integral T");
  return is_nonsingular(T) && represents_one_over_Zp(T, p);
}

std::string_view to_string(ComponentLabel label) {
  switch (label) {
    case ComponentLabel::isolated: return "isolated";
    case ComponentLabel::one_line: return "one_line";
    case ComponentLabel::two_lines: return "two_lines";
    case ComponentLabel::p_plus_one_lines: return "p_plus_one_lines";
  }
  return "unknown";
}

ComponentClassification classify_component(const ComponentInput& in, OddPrime p) {
  const int rank = in.rank_mod_p;
  const int dim = in.dim_m;
  if (rank < 0 || dim < 0) inconsistent("negative rank or dimension");
  if (rank > 3) inconsistent("rank of T mod p is at most 3");
  if (dim > 3) inconsistent("the reduced space has dimension at most 3");
  if (rank > dim) inconsistent("rank of T mod p exceeds dim m");
  if (rank == 3 && dim != 3) inconsistent("rank 3 mod p forces dim m = 3");
  if (rank == 2 && dim != 2) inconsistent("rank 2 mod p forces dim m = 2");
  if (rank >= 2 && !in.represents_one) inconsistent("T of rank >= 2 mod p represents 1");
  if (rank == 0 && in.represents_one) inconsistent("T = 0 mod p cannot represent 1");
  if (rank == 0 && dim > 1) inconsistent("T = 0 mod p forces dim m <= 1");
  if (rank == 1 && dim == 2 && !in.has_radical_line) inconsistent("rank 1 with dim m = 2 requires a radical line");
  if (rank == 1 && dim == 1 && in.has_radical_line) inconsistent("rank 1 with dim m = 1 is a nondegenerate line");
  if (rank == 1 && dim == 3) inconsistent("dim m = 3 forces rank 3 mod p");

  if (in.represents_one) return {ComponentLabel::isolated, "T represents 1: proper intersection point", 0};
  if (rank == 0 && dim == 0)
    return {ComponentLabel::p_plus_one_lines, "p | T, m = 0: every distinguished line through the point", p.value() + 1};
  if (rank == 0) return {ComponentLabel::one_line, "p | T, m a null line: a unique distinguished line", 1};
  if (dim == 1)
    return {ComponentLabel::two_lines, "p does not divide T, m a nondegenerate line: exactly two lines", 2};
  return {ComponentLabel::one_line, "p does not divide T, m with a radical line: exactly one line", 1};
}

std::int64_t FiniteFieldQuadSpace::value(const std::vector<std::int64_t>& x) const {
  std::int64_t q = 0;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) q = mod(q + gram[i][j] * x[i] % p * x[j], p);
  return q;
}

std::int64_t FiniteFieldQuadSpace::determinant() const {
  SymMat m(rank(), rank());
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) m(i, j) = gram[i][j];
  return static_cast<std::int64_t>(reduce_mod(exact_determinant(m), static_cast<std::uint64_t>(p)));
}

std::vector<std::int64_t> FiniteFieldQuadSpace::value_set() const {
  std::vector<bool> seen(static_cast<std::size_t>(p), false);
  std::vector<std::int64_t> x(static_cast<std::size_t>(rank()), 0);
  while (true) {
    seen[static_cast<std::size_t>(value(x))] = true;
    int i = 0;
    while (i < rank() && ++x[i] == p) x[i++] = 0;
    if (i == rank()) break;
  }
  std::vector<std::int64_t> out;
  for (std::int64_t c = 0; c < p; ++c)
    if (seen[static_cast<std::size_t>(c)]) out.push_back(c);
  return out;
}

bool FiniteFieldQuadSpace::represents(std::int64_t c) const {
  const auto v = value_set();
  return std::binary_search(v.begin(), v.end(), mod(c, p));
}

FiniteFieldQuadSpace diagonal_ff_space(OddPrime p, const std::vector<std::int64_t>& diagonal) {
  FiniteFieldQuadSpace q{p.value(), {}};
  const auto n = diagonal.size();
  q.gram.assign(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) q.gram[i][i] = mod(diagonal[i], p);
  return q;
}

FiniteFieldQuadSpace reduced_superspecial_space(OddPrime p) {
  return diagonal_ff_space(p, {-1, -1, -p.least_nonsquare()});
}

FiniteFieldQuadSpace reduced_distinguished_space(OddPrime p) { return diagonal_ff_space(p, {p.least_nonsquare()}); }

bool isometric(const FiniteFieldQuadSpace& a, const FiniteFieldQuadSpace& b) {
  if (a.p != b.p || a.rank() != b.rank()) return false;
  const std::int64_t da = a.determinant(), db = b.determinant();
  if (da == 0 || db == 0) throw std::invalid_argument("isometry test requires nondegenerate forms");
  return is_square_mod(da * db, a.p);
}

Sign clifford_center_square_class(const FiniteFieldQuadSpace& q) {
  const int n = q.rank();
  const std::int64_t sign = (n * (n - 1) / 2) % 2 == 0 ? 1 : -1;
  const std::int64_t z2 = mod(sign * q.determinant(), q.p);
  if (z2 == 0) throw std::invalid_argument("degenerate form");
  return is_square_mod(z2, q.p) ? Sign::plus() : Sign::minus();
}

Fp2::Fp2(OddPrime p) : p_(p.value()), u_(p.least_nonsquare()) {}

Fp2::Element Fp2::add(Element x, Element y) const { return {mod(x.re + y.re, p_), mod(x.im + y.im, p_)}; }

Fp2::Element Fp2::mul(Element x, Element y) const {
  return {mod(x.re * y.re + u_ * mod(x.im * y.im, p_), p_), mod(x.re * y.im + x.im * y.re, p_)};
}

Fp2::Element Fp2::power(Element x, std::uint64_t e) const {
  Element r{1, 0};
  while (e) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

Fp2::Element Fp2::frobenius(Element x) const { return power(x, static_cast<std::uint64_t>(p_)); }

std::int64_t Fp2::norm(Element x) const {
  const Element n = mul(x, frobenius(x));
  if (n.im != 0) throw std::logic_error("norm left F_p");
  return n.re;
}

std::vector<Fp2::Element> Fp2::elements() const {
  std::vector<Element> out;
  for (std::int64_t a = 0; a < p_; ++a)
    for (std::int64_t b = 0; b < p_; ++b) out.push_back({a, b});
  return out;
}

IncidenceCounts incidence_counts(OddPrime p) {
  const Fp2 F(p);
  const auto elems = F.elements();
  IncidenceCounts out{0, 0};
  for (const auto& mu : elems)
    if (F.norm(mu) == mod(-1, p)) ++out.lines_through_point;
  // normalised homogeneous coordinates: (1 : y) for every y, and (0 : 1)
  for (const auto& x : elems)
    for (const auto& y : elems) {
      const bool zero_x = x == Fp2::Element{0, 0};
      const bool normalised = zero_x ? y == Fp2::Element{1, 0} : x == Fp2::Element{1, 0};
      if (normalised) ++out.points_per_line;
    }
  return out;
}

Rational proper_intersection_sum(const std::vector<std::pair<SymMat, std::int64_t>>& entries, OddPrime p) {
  Rational total = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& [T, count] = entries[i];
    if (count < 0) throw std::invalid_argument("point counts must be nonnegative");
    if (!is_p_integral(T, p) || !is_isolated(T, p))
      throw std::invalid_argument("entry " + std::to_string(i) + " is not an isolated intersection");
    total += e_p(gross_keating_exponents(T, p).triple).value * count;
  }
  return total;
}

}  // namespace qflab
