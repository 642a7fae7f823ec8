#pragma once

// Intersection bookkeeping for special cycles: block decomposition of the
// fundamental matrix, the isolation test, the component-count decision table,
// the reduced quadratic spaces over F_p and the incidence constants of the
// supersingular locus.

#include "qflab/padic.hpp"
#include "qflab/quadform.hpp"
#include "qflab/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qflab {

/// Block sizes n_1, ..., n_r with sum 4.
class BlockSpec {
 public:
  /// Throws std::invalid_argument unless every size is in [1, 4] and they sum to 4.
  explicit BlockSpec(std::vector<int> sizes);
  const std::vector<int>& sizes() const { return sizes_; }

 private:
  std::vector<int> sizes_;
};

/// Principal diagonal blocks of T in order.
std::vector<SymMat> extract_blocks(const SymMat& T, const BlockSpec& spec);

/// Whether T has exactly the given diagonal blocks.
bool admissible_for(const SymMat& T, const std::vector<SymMat>& blocks);

/// det T != 0 and T represents 1 over Z_p. Throws for non-p-integral T.
bool is_isolated(const SymMat& T, OddPrime p);

enum class ComponentLabel { isolated, one_line, two_lines, p_plus_one_lines };

std::string_view to_string(ComponentLabel label);

struct ComponentClassification {
  ComponentLabel label;
  std::string case_ref;
  /// Number of lines of the supersingular locus through the point.
  std::int64_t line_count = 0;
};

struct ComponentInput {
  int rank_mod_p = 0;  // rank of T mod p
  int dim_m = 0;       // dimension of the reduced space attached to the point
  bool represents_one = false;
  bool has_radical_line = false;
};

/// The decision table. Throws std::invalid_argument describing the violated
/// constraint for inconsistent inputs.
ComponentClassification classify_component(const ComponentInput& in, OddPrime p);

/// A quadratic space over F_p given by a symmetric Gram matrix with entries in [0, p).
struct FiniteFieldQuadSpace {
  std::int64_t p;
  std::vector<std::vector<std::int64_t>> gram;

  int rank() const { return static_cast<int>(gram.size()); }
  std::int64_t value(const std::vector<std::int64_t>& x) const;
  std::int64_t determinant() const;
  /// Values taken over all of F_p^n, sorted.
  std::vector<std::int64_t> value_set() const;
  bool represents(std::int64_t c) const;
};

/// Diagonal form with entries reduced mod p.
FiniteFieldQuadSpace diagonal_ff_space(OddPrime p, const std::vector<std::int64_t>& diagonal);

/// diag(-1, -1, -u), u the least nonsquare: minus <1> plus the norm form of F_{p^2}.
FiniteFieldQuadSpace reduced_superspecial_space(OddPrime p);

/// <u>, u the least nonsquare: -a a^sigma on the trace-zero line of F_{p^2}.
FiniteFieldQuadSpace reduced_distinguished_space(OddPrime p);

/// Isometry over F_p of nondegenerate forms: same rank and same determinant class.
bool isometric(const FiniteFieldQuadSpace& a, const FiniteFieldQuadSpace& b);

/// Square class of the square of the top-degree element e_1 ... e_n of the
/// Clifford algebra of a diagonal form: (-1)^{n(n-1)/2} det.
Sign clifford_center_square_class(const FiniteFieldQuadSpace& q);

/// F_p[d] / (d^2 - u), u the least nonsquare.
class Fp2 {
 public:
  explicit Fp2(OddPrime p);
  struct Element {
    std::int64_t re = 0;
    std::int64_t im = 0;
    friend bool operator==(const Element&, const Element&) = default;
  };
  std::int64_t prime() const { return p_; }
  std::int64_t nonsquare() const { return u_; }
  Element add(Element x, Element y) const;
  Element mul(Element x, Element y) const;
  /// x^p.
  Element frobenius(Element x) const;
  Element power(Element x, std::uint64_t e) const;
  /// x x^sigma, an element of F_p.
  std::int64_t norm(Element x) const;
  std::vector<Element> elements() const;

 private:
  std::int64_t p_;
  std::int64_t u_;
};

struct IncidenceCounts {
  std::int64_t lines_through_point;  // #{mu in F_{p^2} : mu mu^sigma = -1}
  std::int64_t points_per_line;      // |P^1(F_{p^2})|
};

/// Both numbers recomputed by enumeration over F_{p^2}.
IncidenceCounts incidence_counts(OddPrime p);

/// sum e_p(T) * count(T). Throws std::invalid_argument naming any T that is
/// not an isolated intersection.
Rational proper_intersection_sum(const std::vector<std::pair<SymMat, std::int64_t>>& entries, OddPrime p);

}  // namespace qflab
