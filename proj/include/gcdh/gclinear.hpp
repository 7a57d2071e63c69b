#pragma once

#include <string>
#include <vector>

#include "gcdh/form.hpp"
#include "gcdh/scalar.hpp"

namespace gcdh {

/// Outcome of a structural check. `failures` names each identity that did
/// not hold; `residual` carries an offending value when there is one.
struct Diagnostics {
  bool ok = true;
  std::vector<std::string> failures;
  std::string residual;

  void fail(std::string what, std::string value = {}) {
    ok = false;
    failures.push_back(std::move(what));
    if (residual.empty()) residual = std::move(value);
  }
};

/// Real linear map on V + V* (dim V = n) in the coordinates (V-part, V*-part),
/// the V-part on the dual frame of the model generators.
class GCMap {
 public:
  using Matrix = std::vector<std::vector<Rational>>;

  GCMap(int dim, Matrix matrix);

  /// [[0, -w^{-1}], [w, 0]] with w: X -> i_X omega. Throws on degenerate omega.
  static GCMap symplectic(const Form& omega);
  /// [[-I, 0], [0, I^T]] for a complex structure I on V (I^2 = -1), whose
  /// sqrt(-1)-eigenspace is T^{0,1} + T*^{1,0} and pure spinor dz_1^...^dz_m.
  static GCMap complex(const Matrix& structure);
  /// complex() for I d/dx_k = d/dy_k on the generator pairs (e1,e2),(e3,e4),...
  static GCMap standard_complex(int dim);
  static GCMap identity(int dim);
  /// Block-diagonal sum; the generators of `b` follow those of `a`.
  static GCMap direct_sum(const GCMap& a, const GCMap& b);

  int dim() const { return dim_; }
  const Matrix& matrix() const { return m_; }
  WVector apply(std::span<const Gaussian> v) const;
  GCMap operator*(const GCMap& o) const;
  friend bool operator==(const GCMap&, const GCMap&) = default;

 private:
  int dim_;
  Matrix m_;
};

/// Complex subspace of W = V + V* given by a basis.
struct IsotropicSubspace {
  int dim_v = 0;
  std::vector<WVector> basis;
  std::size_t dim() const { return basis.size(); }
};

bool same_span(const IsotropicSubspace& a, const IsotropicSubspace& b);
bool is_isotropic(const IsotropicSubspace& s);

Diagnostics validate(const GCMap& j);
/// Kernel of J - i over Q(i). Throws DomainError if J is invalid or the
/// eigenspace dimension is not dim V.
IsotropicSubspace i_eigenspace(const GCMap& j);
/// Codimension of the V-projection of the sqrt(-1)-eigenspace.
int type_of(const GCMap& j);

/// Generator of the annihilator line of L, normalized so its first nonzero
/// coefficient in canonical term order is 1.
Form pure_spinor(const IsotropicSubspace& l);

struct AnnihilatorResult {
  IsotropicSubspace space;
  bool maximal_isotropic = false;
  bool nondegenerate = false;
  bool transverse = false;
};
AnnihilatorResult annihilator(const Form& phi);

/// e^B J e^{-B} with e^B = [[1, 0], [B, 1]].
GCMap b_transform(const GCMap& j, const Form& b);

/// Clifford action of J on forms, labelled so the pure-spinor line has
/// eigenvalue -(dim V / 2) i.
Form clifford_lift(const GCMap& j, const Form& phi);

struct GradingComponent {
  int k = 0;
  std::vector<Form> basis;
};
/// U^k = (-k i)-eigenspace of clifford_lift, k = -n..n with n = dim V / 2.
std::vector<GradingComponent> uk_grading(const GCMap& j);

/// Commutation and positivity of <-J1 J2 u, u> on V + V*.
Diagnostics kahler_check(const GCMap& j1, const GCMap& j2);

}  // namespace gcdh
