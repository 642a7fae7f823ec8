#pragma once

// Dense univariate polynomials and rational functions over an exact scalar.

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qflab {

template <typename Scalar>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Scalar constant) : coeffs_{std::move(constant)} { trim(); }  // NOLINT: implicit by design of the algebra
  explicit Polynomial(std::vector<Scalar> ascending) : coeffs_(std::move(ascending)) { trim(); }

  static Polynomial monomial(Scalar c, int degree) {
    std::vector<Scalar> v(static_cast<std::size_t>(degree) + 1, Scalar(0));
    v.back() = std::move(c);
    return Polynomial(std::move(v));
  }
  static Polynomial x() { return monomial(Scalar(1), 1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }
  Scalar coefficient(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<std::size_t>(k)] : Scalar(0);
  }
  Scalar leading() const { return coeffs_.empty() ? Scalar(0) : coeffs_.back(); }

  Scalar operator()(const Scalar& x) const {
    Scalar acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    std::vector<Scalar> d;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * Scalar(static_cast<long>(k)));
    return Polynomial(std::move(d));
  }

  /// x^n p(1/x) for n >= degree.
  Polynomial reversed(int n) const {
    if (n < degree()) throw std::invalid_argument("reversal degree below polynomial degree");
    std::vector<Scalar> r(static_cast<std::size_t>(n) + 1, Scalar(0));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) r[static_cast<std::size_t>(n) - k] = coeffs_[k];
    return Polynomial(std::move(r));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Scalar(0));
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) { return *this += -o; }
  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> r(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(r));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == Scalar(0)) coeffs_.pop_back();
  }
  std::vector<Scalar> coeffs_;
};

/// numerator / denominator, denominator normalised to be monic.
template <typename Scalar>
class RationalFunction {
 public:
  RationalFunction(Polynomial<Scalar> numerator, Polynomial<Scalar> denominator = Polynomial<Scalar>(Scalar(1)))
      : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_.is_zero()) throw std::invalid_argument("zero denominator");
    const Scalar lead = den_.leading();
    if (lead != Scalar(1)) {
      const Polynomial<Scalar> scale(Scalar(1) / lead);
      num_ = num_ * scale;
      den_ = den_ * scale;
    }
  }

  const Polynomial<Scalar>& numerator() const { return num_; }
  const Polynomial<Scalar>& denominator() const { return den_; }

  /// Throws std::domain_error where the denominator vanishes.
  Scalar operator()(const Scalar& x) const {
    const Scalar d = den_(x);
    if (d == Scalar(0)) throw std::domain_error("denominator vanishes at evaluation point");
    return num_(x) / d;
  }

  /// Exact derivative at x by the quotient rule.
  Scalar derivative_at(const Scalar& x) const {
    const Scalar d = den_(x);
    if (d == Scalar(0)) throw std::domain_error("denominator vanishes at evaluation point");
    return (num_.derivative()(x) * d - num_(x) * den_.derivative()(x)) / (d * d);
  }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }

 private:
  Polynomial<Scalar> num_;
  Polynomial<Scalar> den_;
};

}  // namespace qflab
