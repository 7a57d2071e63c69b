#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace gcdh {

using Rational = mpq_class;

/// Element of Q(i): re + im*i with exact rational parts.
class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
  Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Gaussian i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  Gaussian conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  /// Throws DomainError on zero.
  Gaussian inverse() const;

  Gaussian operator-() const { return {-re_, -im_}; }
  Gaussian& operator+=(const Gaussian& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o) { return *this *= o.inverse(); }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// "3/2", "-i", "2*i", "(1+2*i)"; parenthesized when both parts are nonzero.
  std::string to_string() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const Gaussian& g);

/// Product of named commuting real parameters with positive exponents,
/// kept sorted by name. The name `pi` is the formal constant.
class Monomial {
 public:
  Monomial() = default;
  static Monomial variable(const std::string& name, int power = 1);

  const std::vector<std::pair<std::string, int>>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  int degree() const;
  /// Degree ignoring the formal constant `pi`.
  int degree_without_pi() const;
  int exponent(const std::string& name) const;

  Monomial operator*(const Monomial& o) const;
  /// Factors of `this` with `name` removed.
  Monomial without(const std::string& name) const;
  /// Componentwise minimum of exponents (common factor).
  Monomial gcd(const Monomial& o) const;
  /// Exact quotient; caller guarantees divisibility.
  Monomial divide(const Monomial& o) const;

  std::string to_string() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::pair<std::string, int>> factors_;
};

/// Term order used for printing and canonical storage: higher total degree
/// first, then lexicographic on the factor list.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Polynomial in named real parameters with Gaussian-rational coefficients.
/// Canonical: no zero coefficients stored.
class Scalar {
 public:
  using Terms = std::map<Monomial, Gaussian, MonomialOrder>;

  Scalar() = default;
  Scalar(long v) : Scalar(Gaussian(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Gaussian& g);               // NOLINT(google-explicit-constructor)
  Scalar(const Gaussian& g, const Monomial& m);

  static Scalar parameter(const std::string& name) { return {Gaussian(1), Monomial::variable(name)}; }
  static Scalar pi() { return parameter("pi"); }
  static Scalar i() { return Scalar(Gaussian::i()); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when no parameter (including `pi`) occurs.
  bool is_constant() const;
  /// The value of a constant scalar; throws DomainError otherwise.
  Gaussian constant_value() const;
  bool is_real() const;
  /// Total degree in the non-`pi` parameters; -1 for zero.
  int parameter_degree() const;

  Scalar conj() const;
  Scalar real_part() const;
  Scalar imag_part() const;
  Scalar substitute(const std::string& name, const Rational& value) const;
  Scalar derivative(const std::string& name) const;
  std::vector<std::string> parameters() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  /// Division by a nonzero parameter-free scalar only.
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }

  /// Canonical text with common content and monomial factored out,
  /// e.g. "-2*pi*(t+1)".
  std::string to_string() const;
  /// Canonical expanded text without factoring, e.g. "-2*pi*t-2*pi".
  std::string to_expanded_string() const;

 private:
  void add_term(const Monomial& m, const Gaussian& c);
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace gcdh
