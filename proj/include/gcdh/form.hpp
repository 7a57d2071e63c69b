#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gcdh/scalar.hpp"

namespace gcdh {

/// Subset of generator indices; bit i set means e_{i+1} is present.
using Mask = std::uint64_t;

inline constexpr int kMaxGenerators = 64;

/// Canonical term order: lower degree first, then lexicographic on the
/// increasing index lists.
bool mask_less(Mask a, Mask b);
std::vector<int> mask_indices(Mask m);
int mask_degree(Mask m);

/// Element of the exterior algebra on N degree-one generators with Scalar
/// coefficients. Generator indices are zero-based in this API.
class Form {
 public:
  using Terms = std::map<Mask, Scalar>;

  Form() = default;
  explicit Form(int generators);
  Form(int generators, const Scalar& constant);

  static Form generator(int generators, int index);
  static Form monomial(int generators, Mask mask, const Scalar& coefficient = Scalar(1));

  int generators() const { return n_; }
  Mask top_mask() const { return n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(Mask m) const;
  Scalar top() const { return coefficient(top_mask()); }
  Form homogeneous(int degree) const;
  Form even_part() const;
  Form odd_part() const;
  bool is_homogeneous(int degree) const;
  /// Maximum degree present, -1 for zero.
  int max_degree() const;

  Form conj() const;
  /// Apply a scalar map to every coefficient (drops resulting zeros).
  template <class F>
  Form map_coefficients(F&& f) const {
    Form r(n_);
    for (const auto& [m, c] : terms_) r.add(m, f(c));
    return r;
  }
  Form substitute(const std::string& parameter, const Rational& value) const;

  void add(Mask m, const Scalar& c);

  Form operator-() const;
  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(const Scalar& s);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, const Scalar& s) { return a *= s; }
  friend Form operator*(const Scalar& s, Form a) { return a *= s; }
  friend bool operator==(const Form& a, const Form& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  /// Canonical text; generator names default to e1..eN.
  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  int n_ = 0;
  Terms terms_;
};

/// Sign of e_A ^ e_B for disjoint A, B (+1 or -1); 0 when they intersect.
int wedge_sign(Mask a, Mask b);

Form wedge(const Form& a, const Form& b);
/// Interior product with the dual vector of generator `index`.
Form contract(int index, const Form& a);
/// Interior product with a general vector given by coefficients on the
/// dual frame.
Form contract(std::span<const Gaussian> vector, const Form& a);
/// Reversal anti-automorphism: degree-q part times (-1)^{q(q-1)/2}.
Form reversal(const Form& a);
/// Top-degree coefficient of reversal(a) ^ b.
Scalar mukai(const Form& a, const Form& b);
/// exp of a pure degree-2 form.
Form exp_two_form(const Form& b);
/// exp of an even form with zero constant part (nilpotent); finite series.
Form exp_nilpotent(const Form& a);
/// a^k.
Form wedge_power(const Form& a, int k);

/// Element X + xi of W = V + V*, stored as the 2N coefficients (X-part on
/// the dual frame first, then the xi-part on the generators).
using WVector = std::vector<Gaussian>;

/// Clifford action (X + xi).a = i_X a + xi ^ a.
Form clifford(std::span<const Gaussian> v, const Form& a);
/// Canonical pairing <X+xi, Y+eta> = (eta(X) + xi(Y)) / 2.
Gaussian pairing(std::span<const Gaussian> u, std::span<const Gaussian> v);
WVector conj(std::span<const Gaussian> v);
/// The degree-one form with the xi-part of v as coefficients.
Form covector_part(std::span<const Gaussian> v);

/// orientation * volume * top coefficient of a.
Scalar integrate(const Form& a, const Scalar& volume, int orientation);

/// Linear substitution e_i -> images[i] (each a degree-1 form over the target
/// generator count), extended multiplicatively.
Form pullback(const Form& a, std::span<const Form> images);

}  // namespace gcdh
