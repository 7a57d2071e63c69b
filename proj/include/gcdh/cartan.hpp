#pragma once

#include <map>
#include <string>
#include <vector>

#include "gcdh/dgamodel.hpp"
#include "gcdh/form.hpp"
#include "gcdh/gclinear.hpp"

namespace gcdh {

/// Exponent vector of a monomial in x_1..x_k.
using Exponent = std::vector<int>;

int total_degree(const Exponent& e);

/// Total degree first, then x_1 before x_2 before ...
struct ExponentOrder {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Polynomial in x_1..x_k with Form coefficients, truncated at total x-degree
/// `trunc`. Terms pushed past the truncation are dropped and remembered in
/// `truncated()`.
class EqForm {
 public:
  using Terms = std::map<Exponent, Form, ExponentOrder>;

  EqForm() = default;
  EqForm(int rank, int generators, int trunc);
  static EqForm constant(int rank, int trunc, const Form& f);

  int rank() const { return k_; }
  int generators() const { return n_; }
  int trunc() const { return trunc_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool truncated() const { return truncated_; }

  Form coefficient(const Exponent& e) const;
  void add(const Exponent& e, const Form& f);
  /// Apply a linear form operator to every coefficient.
  template <class F>
  EqForm map(F&& f) const {
    EqForm r(k_, n_, trunc_);
    r.truncated_ = truncated_;
    for (const auto& [e, c] : terms_) r.add(e, f(c));
    return r;
  }
  EqForm times_x(int j) const;
  /// Value at x = 0.
  Form at_zero() const { return coefficient(Exponent(static_cast<std::size_t>(k_), 0)); }
  EqForm with_trunc(int trunc) const;

  EqForm operator-() const;
  EqForm& operator+=(const EqForm& o);
  EqForm& operator-=(const EqForm& o);
  friend EqForm operator+(EqForm a, const EqForm& b) { return a += b; }
  friend EqForm operator-(EqForm a, const EqForm& b) { return a -= b; }
  friend EqForm operator*(EqForm a, const Scalar& s) {
    return a.map([&](const Form& f) { return f * s; });
  }
  friend bool operator==(const EqForm& a, const EqForm& b) { return a.terms_ == b.terms_; }

  /// "x1^2*(e1 + e2) + x2*e1^e2"; coefficient text uses the given names.
  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  void require_compatible(const EqForm& o) const;
  int k_ = 0;
  int n_ = 0;
  int trunc_ = 0;
  Terms terms_;
  bool truncated_ = false;
};

EqForm wedge(const EqForm& a, const EqForm& b);
EqForm wedge(const Form& a, const EqForm& b);

/// Torus action on an invariant model by constant vector fields xi_j (given on
/// the dual frame), with formal moment differentials m^j and moment one-forms
/// alpha^j. Missing m / alpha are zero.
class TorusAction {
 public:
  TorusAction() = default;
  /// Checks invariance of the d table and H, and d m^j = 0.
  TorusAction(const Model& m, std::vector<std::vector<Rational>> xi, std::vector<Form> mu_diff = {},
              std::vector<Form> alpha = {});

  int rank() const { return static_cast<int>(xi_.size()); }
  int generators() const { return n_; }
  const std::vector<Gaussian>& xi(int j) const { return xi_[static_cast<std::size_t>(j)]; }
  const Form& mu_diff(int j) const { return mu_diff_[static_cast<std::size_t>(j)]; }
  const Form& alpha(int j) const { return alpha_[static_cast<std::size_t>(j)]; }
  Form contract(int j, const Form& a) const;

 private:
  int n_ = 0;
  std::vector<std::vector<Gaussian>> xi_;
  std::vector<Form> mu_diff_;
  std::vector<Form> alpha_;
};

/// d_G = d - x^j i_{xi_j}.
EqForm d_equivariant(const Model& m, const TorusAction& act, const EqForm& eta);
/// d_G - H_G ^.
EqForm d_equivariant_twisted(const Model& m, const TorusAction& act, const EqForm& h_g, const EqForm& eta);
/// H + x^j alpha^j.
EqForm h_equivariant(const Model& m, const TorusAction& act, int trunc);
/// Throws DomainError when d_G H_G != 0 below the truncation.
void require_equivariantly_closed(const Model& m, const TorusAction& act, const EqForm& h_g);

/// A = x^j (-i_{xi_j} + (i m^j - alpha^j) ^).
EqForm moment_operator(const TorusAction& act, const EqForm& gamma);
/// D_G = d_H + A.
EqForm d_moment(const Model& m, const TorusAction& act, const EqForm& gamma);
/// The twist H + x^j (alpha^j - i m^j), so that D_G = d_{G, twist}.
EqForm moment_twist(const Model& m, const TorusAction& act, int trunc);

/// Checks (-xi_j + i(m^j + i alpha^j)).rho = 0 for every j and d_G(H + x alpha) = 0.
Diagnostics hamiltonian_check(const Model& m, const TorusAction& act, const Form& rho);

/// Parameter names standing for the formal moment map components.
std::string mu_symbol(int j);
/// d extended to coefficients polynomial in the mu symbols: d(mu_j) = m^j.
Form d_formal(const Model& m, const TorusAction& act, const Form& a);
/// D_G with d replaced by d_formal.
EqForm d_moment_formal(const Model& m, const TorusAction& act, const EqForm& gamma);
/// d_{G,H_G} with d replaced by d_formal.
EqForm d_equivariant_twisted_formal(const Model& m, const TorusAction& act, const EqForm& h_g,
                                    const EqForm& eta);
/// exp(s * i * x^j mu_j) truncated in x-degree, s = +1 or -1.
EqForm exp_moment(int rank, int generators, int trunc, int sign);

struct EquivariantRanks {
  int trunc = 0;
  /// Rank of the image of H(C_{trunc + n/2 + 1}) in H(C_p), p = 0..trunc.
  std::vector<BettiPair> cumulative;
  /// New classes in x-degree p, p = 0..trunc-1.
  std::vector<BettiPair> per_degree;
  /// cumulative[trunc - 1].
  BettiPair total;
  bool stable = false;
  /// per_degree[p] == C(p + k - 1, k - 1) * H(M, H) for all reported p.
  bool free = false;
  BettiPair model_betti;
};

/// Ranks of the truncated complex (C[x]_{<= trunc} (x) forms, d_{G,H_G}).
EquivariantRanks equivariant_cohomology(const Model& m, const TorusAction& act, const EqForm& h_g, int trunc);

/// Connection forms theta^j dual to the action with curvature c^j = d theta^j.
class Connection {
 public:
  Connection() = default;
  Connection(const Model& m, const TorusAction& act, std::vector<Form> theta);

  int rank() const { return static_cast<int>(theta_.size()); }
  const Form& theta(int j) const { return theta_[static_cast<std::size_t>(j)]; }
  const Form& curvature(int j) const { return curvature_[static_cast<std::size_t>(j)]; }

 private:
  std::vector<Form> theta_;
  std::vector<Form> curvature_;
};

/// prod_j (1 - theta^j i_j) a.
Form horizontal_part(const TorusAction& act, const Connection& conn, const Form& a);
bool is_basic(const Model& m, const TorusAction& act, const Form& a);

/// x^I (x) g -> c^I ^ g_hor, summed.
Form cartan_map(const TorusAction& act, const Connection& conn, const EqForm& eta);

struct GammaResult {
  Form gamma;
  /// H + x^j alpha^j + d_G Gamma, which has no x-terms and is basic.
  Form basic_h;
};
GammaResult gamma_from_connection(const Model& m, const TorusAction& act, const Connection& conn);

/// Quotient model of a free action: generators span the horizontal 1-forms,
/// with the induced d table.
struct Quotient {
  Model model;
  /// Old generator e_i expressed in the frame (horizontal basis, theta^1..theta^k).
  std::vector<Form> change_of_frame;
};
/// H of the quotient model is left zero; pass a basic H to `descend` for H~.
Quotient quotient_model(const Model& m, const TorusAction& act, const Connection& conn);
/// The quotient form pulling back to the basic form a.
Form descend(const Model& m, const TorusAction& act, const Connection& conn, const Form& a);
Form descend(const Quotient& q, const Model& m, const TorusAction& act, const Form& a);

/// DGA morphism given by generator images in a target model.
struct Morphism {
  Model target;
  std::vector<Form> images;
};
/// Checks f d = d f on generators; returns the identity morphism of m.
Morphism identity_morphism(const Model& m);
void require_morphism(const Model& source, const Morphism& f);
EqForm pullback(const Morphism& f, const EqForm& eta);

/// Pullback along `sub`, Cartan map on the target, descent to its quotient.
Form kirwan_map(const Model& source, const Morphism& sub, const TorusAction& target_action,
                const Connection& target_connection, const EqForm& eta);

struct ExtensionResult {
  EqForm phi_g;
  /// D_G phi_g, zero when the recursion succeeded.
  EqForm residual;
  int steps = 0;
};
/// Canonical equivariant extension of a del- and delbar-closed invariant phi.
/// Throws DomainError carrying the unsolvable right-hand side when a
/// delbar del equation has no solution.
ExtensionResult canonical_extension(const Model& m, const TorusAction& act, const GCMap& j, const Form& phi,
                                    int trunc);

}  // namespace gcdh
