#pragma once

#include <string>
#include <vector>

#include "gcdh/form.hpp"
#include "gcdh/gclinear.hpp"
#include "gcdh/linalg.hpp"

namespace gcdh {

/// Finite invariant DGA on N degree-one generators: d on generators, a closed
/// 3-form H, and the declared total volume and orientation used by integrals.
class Model {
 public:
  Model() = default;
  /// Validates d^2 = 0 on every generator and dH = 0.
  Model(std::vector<std::string> names, std::vector<Form> d_table, Form h = {}, Scalar volume = 1,
        int orientation = 1);

  static Model torus(int n, Form h = {});
  static std::vector<std::string> default_names(int n);

  int generators() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Form>& d_table() const { return d_table_; }
  const Form& h() const { return h_; }
  const Scalar& volume() const { return volume_; }
  int orientation() const { return orientation_; }

  Model with_h(Form h) const;
  std::string print(const Form& f) const { return f.to_string(names_); }

 private:
  std::vector<std::string> names_;
  std::vector<Form> d_table_;
  Form h_;
  Scalar volume_ = 1;
  int orientation_ = 1;
};

Form d(const Model& m, const Form& a);
/// d a - H ^ a.
Form d_twisted(const Model& m, const Form& a);
Form d_twisted(const Model& m, const Form& h, const Form& a);

/// Matrix of a linear operator on the exterior algebra in mask coordinates.
template <class Op>
linalg::LinearMap operator_matrix(int generators, Op&& op) {
  linalg::LinearMap map;
  map.domain_dim = std::size_t{1} << generators;
  map.columns.reserve(map.domain_dim);
  for (std::size_t mask = 0; mask < map.domain_dim; ++mask)
    map.columns.push_back(linalg::to_vector(op(Form::monomial(generators, static_cast<Mask>(mask)))));
  return map;
}

struct BettiPair {
  std::size_t even = 0;
  std::size_t odd = 0;
  std::string over = "Q(i)";
  friend bool operator==(const BettiPair& a, const BettiPair& b) { return a.even == b.even && a.odd == b.odd; }
};

BettiPair twisted_cohomology(const Model& m);
/// Z-graded Betti numbers b_0..b_N of d; requires H = 0.
std::vector<std::size_t> betti_numbers(const Model& m);

/// e^lambda ^ a, for a pure 2-form lambda.
Form exp_lambda_transport(const Model& m, const Form& lambda, const Form& a);
/// a ^ b after checking d a = 0 and d_H b = 0; the product is verified d_H-closed.
Form module_wedge(const Model& m, const Form& a, const Form& b);
/// sigma(a) for d_H-closed a; the result is checked to be d_{-H}-closed.
Form sigma_twist(const Model& m, const Form& a);
/// (X + g).a = 0 implies (X - g).sigma(a) = 0.
/// Returns false only when the hypothesis holds and the conclusion fails.
bool sigma_clifford_check(const WVector& v, const Form& a);

/// Eigenbasis of the U^k grading with coordinate extraction.
class GradedBasis {
 public:
  explicit GradedBasis(const GCMap& j);
  int half() const { return half_; }
  const std::vector<GradingComponent>& components() const { return components_; }
  /// Components a_k (index k + half) with a = sum a_k.
  std::vector<Form> decompose(const Form& a) const;

 private:
  int generators_;
  int half_;
  std::vector<GradingComponent> components_;
  std::vector<int> owner_;  // basis slot -> k + half
  std::vector<Form> slots_;
  linalg::Echelon echelon_;
};

struct DelDelbar {
  Form del;     // component in U^{k-1}
  Form delbar;  // component in U^{k+1}
};

/// Split of d_H into the U^{k-1} and U^{k+1} parts; throws DomainError naming
/// the offending component when d_H a has any other component.
DelDelbar del_delbar_split(const Model& m, const GCMap& j, const Form& a);
DelDelbar del_delbar_split(const Model& m, const GradedBasis& basis, const Form& a);

/// del and delbar as matrices in mask coordinates.
struct DelOperators {
  linalg::LinearMap del, delbar;
};
DelOperators del_operators(const Model& m, const GCMap& j);

struct DdbarResult {
  bool ok = true;
  std::string failed;  // which equality failed
  Form witness;
  std::size_t ker_del_im_delbar = 0;
  std::size_t im_del_ker_delbar = 0;
  std::size_t im_delbar_del = 0;
};

/// Exact test of ker del ∩ im delbar = im del ∩ ker delbar = im delbar del.
DdbarResult ddbar_lemma_check(const Model& m, const GCMap& j);

/// Cohomology of (ker delbar, d_H).
BettiPair delbar_closed_cohomology(const Model& m, const GCMap& j);

}  // namespace gcdh
