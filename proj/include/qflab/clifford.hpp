#pragma once

// Quaternion arithmetic, the five-dimensional space V_B, Witt indices, the
// explicit 4x4 spin representation of a split five-dimensional space, and the
// involution-type rules.

#include "qflab/padic.hpp"
#include "qflab/quadform.hpp"
#include "qflab/quaternion.hpp"
#include "qflab/rational.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace qflab {

/// x_0 + x_1 i + x_2 j + x_3 k in a fixed algebra.
struct Quaternion {
  QuaternionAlgebra algebra;
  std::array<Rational, 4> x;

  static Quaternion scalar(const QuaternionAlgebra& B, Rational c) { return {B, {std::move(c), 0, 0, 0}}; }
  static Quaternion basis(const QuaternionAlgebra& B, int index);
  friend bool operator==(const Quaternion&, const Quaternion&) = default;
};

// Binary operations throw std::invalid_argument for quaternions of different algebras.
Quaternion quat_add(const Quaternion& x, const Quaternion& y);
Quaternion quat_mul(const Quaternion& x, const Quaternion& y);
Quaternion quat_conj(const Quaternion& x);
Rational quat_norm(const Quaternion& x);
Rational quat_trace(const Quaternion& x);

/// <1> plus the reduced norm, as a quadratic space.
QuadSpace vb_space(const QuaternionAlgebra& B);

/// Largest k with k hyperbolic planes in the local space.
int local_witt_index(const QuadSpace& V, const Place& v);

/// Minimum of the local indices over the places where V can differ from a
/// split form (2, infinity and the primes of its diagonal).
int rational_witt_index(const QuadSpace& V);

enum class SpinGenerator { e0, e1, v0, f0, f1 };

std::string_view to_string(SpinGenerator g);

using SpinMatrix = Eigen::Matrix4i;
using GramMatrix5 = Eigen::Matrix<int, 5, 5>;
using SpinWord = std::vector<SpinGenerator>;

struct SpinGenerators {
  std::array<SpinMatrix, 5> sigma;  // indexed by SpinGenerator
  SpinMatrix J;
  GramMatrix5 gram;  // coefficient matrix of q in the basis e0, e1, v0, f0, f1

  const SpinMatrix& operator[](SpinGenerator g) const { return sigma[static_cast<std::size_t>(g)]; }
};

const SpinGenerators& spin_generators();

SpinMatrix spin_image(const SpinWord& word);

struct SpinCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

/// For x != y: xy + yx = gram(x, y) * 1, and x^2 = gram(x, x) * 1.
SpinCheck check_clifford_relations();

/// J sigma(w)^t J^{-1} = sigma(reversed w) for every word, plus the Clifford relations.
SpinCheck check_spin_compatibility(const std::vector<SpinWord>& words);

enum class InvolutionType { main, neben };

std::string_view to_string(InvolutionType t);

/// Type of the tensor product of two involutions.
InvolutionType involution_tensor_type(InvolutionType t1, InvolutionType t2);

enum class RealQuaternionType { split, division };

struct InvolutionDescriptor {
  int conj_sign = -1;               // tau^iota = conj_sign * tau
  std::optional<int> square_sign;   // sign of tau^2 when known
};

/// Positivity of x -> tau x^iota tau^{-1} on a real quaternion algebra.
/// Throws std::invalid_argument for descriptors no tau can have, or when the
/// split case needs the sign of tau^2 and none is given.
bool positive_involution_criterion(RealQuaternionType type, const InvolutionDescriptor& tau);

}  // namespace qflab
