#include "gcdh/gclinear.hpp"

#include <algorithm>
#include <bit>

#include "gcdh/error.hpp"
#include "gcdh/linalg.hpp"

namespace gcdh {

namespace {

using linalg::SparseVector;
using Matrix = GCMap::Matrix;

Matrix zero_matrix(std::size_t n) { return Matrix(n, std::vector<Rational>(n, Rational(0))); }

Matrix invert(Matrix a) {
  std::size_t n = a.size();
  Matrix inv = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == n) throw DomainError("matrix is singular");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= p;
      inv[col][c] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      Rational f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

Rational real_constant(const Scalar& s, const char* what) {
  Gaussian g = s.constant_value();
  if (!g.is_real()) throw DomainError(std::string(what) + " must have real coefficients", s.to_string());
  return g.re();
}

/// w[r][c] = coefficient of e_r in i_{d/dx_c} b, for a real constant 2-form b.
Matrix two_form_matrix(const Form& b) {
  if (!b.is_homogeneous(2)) throw DomainError("expected a pure 2-form", b.to_string());
  int n = b.generators();
  Matrix w = zero_matrix(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    Form img = contract(c, b);
    for (const auto& [m, coeff] : img.terms())
      w[static_cast<std::size_t>(std::countr_zero(m))][static_cast<std::size_t>(c)] =
          real_constant(coeff, "2-form");
  }
  return w;
}

WVector column(const GCMap& j, int c) {
  WVector v;
  v.reserve(j.matrix().size());
  for (const auto& row : j.matrix()) v.emplace_back(row[static_cast<std::size_t>(c)]);
  return v;
}

SparseVector wvector_to_sparse(const WVector& v) { return linalg::from_dense(v); }

/// Raw spin lift (1/2) sum_a (J w_a).(w^a . phi), w^a dual to w_a under 2<.,.>.
Form raw_lift(const GCMap& j, const Form& phi) {
  int n = j.dim();
  Form out(n);
  for (int i = 0; i < n; ++i) {
    WVector jd = column(j, i);
    WVector je = column(j, n + i);
    out += clifford(jd, wedge(Form::generator(n, i), phi));
    out += clifford(je, contract(i, phi));
  }
  return out * Scalar(Gaussian(Rational(1, 2)));
}

struct LiftNormalization {
  int sign = 1;
  Gaussian shift;
};

LiftNormalization lift_normalization(const GCMap& j) {
  Form rho = pure_spinor(i_eigenspace(j));
  Form image = raw_lift(j, rho);
  Mask lead = rho.terms().begin()->first;
  for (const auto& [m, c] : rho.terms())
    if (mask_less(m, lead)) lead = m;
  Gaussian lambda = image.coefficient(lead).constant_value() / rho.coefficient(lead).constant_value();
  if (!(image - rho * Scalar(lambda)).is_zero())
    throw DomainError("pure spinor is not an eigenvector of the Clifford lift");
  LiftNormalization norm;
  norm.sign = sgn(lambda.im()) > 0 ? -1 : 1;
  Gaussian target(Rational(0), Rational(-(j.dim() / 2)));
  norm.shift = target - Gaussian(norm.sign) * lambda;
  return norm;
}

}  // namespace

// ---- GCMap ----------------------------------------------------------------

GCMap::GCMap(int dim, Matrix matrix) : dim_(dim), m_(std::move(matrix)) {
  auto size = static_cast<std::size_t>(2 * dim);
  if (dim < 0 || m_.size() != size ||
      std::any_of(m_.begin(), m_.end(), [size](const auto& r) { return r.size() != size; }))
    throw DomainError("GC map must be a square matrix of size 2*dim");
}

GCMap GCMap::symplectic(const Form& omega) {
  Matrix w = two_form_matrix(omega);
  Matrix winv;
  try {
    winv = invert(w);
  } catch (const DomainError&) {
    throw DomainError("symplectic form is degenerate", omega.to_string());
  }
  auto n = static_cast<std::size_t>(omega.generators());
  Matrix m = zero_matrix(2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      m[n + r][c] = w[r][c];
      m[r][n + c] = -winv[r][c];
    }
  }
  return {static_cast<int>(n), std::move(m)};
}

GCMap GCMap::complex(const Matrix& structure) {
  std::size_t n = structure.size();
  Matrix m = zero_matrix(2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (structure[r].size() != n) throw DomainError("complex structure must be square");
    for (std::size_t c = 0; c < n; ++c) {
      m[r][c] = -structure[r][c];
      m[n + c][n + r] = structure[r][c];
    }
  }
  return {static_cast<int>(n), std::move(m)};
}

GCMap GCMap::standard_complex(int dim) {
  if (dim % 2 != 0) throw DomainError("complex structure needs an even dimension");
  Matrix s = zero_matrix(static_cast<std::size_t>(dim));
  for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(dim); k += 2) {
    s[k + 1][k] = 1;
    s[k][k + 1] = -1;
  }
  return complex(s);
}

GCMap GCMap::identity(int dim) {
  Matrix m = zero_matrix(static_cast<std::size_t>(2 * dim));
  for (std::size_t i = 0; i < m.size(); ++i) m[i][i] = 1;
  return {dim, std::move(m)};
}

GCMap GCMap::direct_sum(const GCMap& a, const GCMap& b) {
  auto na = static_cast<std::size_t>(a.dim());
  auto nb = static_cast<std::size_t>(b.dim());
  std::size_t n = na + nb;
  Matrix m = zero_matrix(2 * n);
  // Position of a coordinate of a (resp. b) inside the combined (V, V*) layout.
  auto pos_a = [&](std::size_t i) { return i < na ? i : n + (i - na); };
  auto pos_b = [&](std::size_t i) { return i < nb ? na + i : n + na + (i - nb); };
  for (std::size_t r = 0; r < 2 * na; ++r)
    for (std::size_t c = 0; c < 2 * na; ++c) m[pos_a(r)][pos_a(c)] = a.matrix()[r][c];
  for (std::size_t r = 0; r < 2 * nb; ++r)
    for (std::size_t c = 0; c < 2 * nb; ++c) m[pos_b(r)][pos_b(c)] = b.matrix()[r][c];
  return {static_cast<int>(n), std::move(m)};
}

WVector GCMap::apply(std::span<const Gaussian> v) const {
  if (v.size() != m_.size()) throw DomainError("vector dimension mismatch");
  WVector out(v.size());
  for (std::size_t r = 0; r < m_.size(); ++r)
    for (std::size_t c = 0; c < m_.size(); ++c)
      if (sgn(m_[r][c]) != 0 && !v[c].is_zero()) out[r] += Gaussian(m_[r][c]) * v[c];
  return out;
}

GCMap GCMap::operator*(const GCMap& o) const {
  if (o.dim_ != dim_) throw DomainError("GC map dimension mismatch");
  std::size_t n = m_.size();
  Matrix p = zero_matrix(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(m_[r][k]) == 0) continue;
      for (std::size_t c = 0; c < n; ++c) p[r][c] += m_[r][k] * o.m_[k][c];
    }
  return {dim_, std::move(p)};
}

// ---- subspaces ------------------------------------------------------------

bool same_span(const IsotropicSubspace& a, const IsotropicSubspace& b) {
  std::vector<SparseVector> va, all;
  for (const auto& v : a.basis) va.push_back(wvector_to_sparse(v));
  all = va;
  for (const auto& v : b.basis) all.push_back(wvector_to_sparse(v));
  std::vector<SparseVector> vb(all.begin() + static_cast<long>(va.size()), all.end());
  std::size_t r = linalg::rank(all);
  return r == linalg::rank(va) && r == linalg::rank(vb);
}

bool is_isotropic(const IsotropicSubspace& s) {
  for (std::size_t a = 0; a < s.basis.size(); ++a)
    for (std::size_t b = a; b < s.basis.size(); ++b)
      if (!pairing(s.basis[a], s.basis[b]).is_zero()) return false;
  return true;
}

Diagnostics validate(const GCMap& j) {
  Diagnostics d;
  GCMap sq = j * j;
  GCMap::Matrix minus_one = GCMap::identity(j.dim()).matrix();
  for (auto& row : minus_one)
    for (auto& x : row) x = -x;
  if (!(sq.matrix() == minus_one)) d.fail("J^2 != -1");
  // Orthogonality: <J u, J v> = <u, v> on all basis pairs.
  auto n2 = static_cast<int>(j.matrix().size());
  for (int a = 0; a < n2 && d.failures.size() < 2; ++a) {
    for (int b = a; b < n2; ++b) {
      WVector ua(static_cast<std::size_t>(n2)), ub(static_cast<std::size_t>(n2));
      ua[static_cast<std::size_t>(a)] = 1;
      ub[static_cast<std::size_t>(b)] = 1;
      if (!(pairing(j.apply(ua), j.apply(ub)) == pairing(ua, ub))) {
        d.fail("J does not preserve the canonical pairing",
               "basis pair (" + std::to_string(a) + "," + std::to_string(b) + ")");
        break;
      }
    }
  }
  return d;
}

IsotropicSubspace i_eigenspace(const GCMap& j) {
  Diagnostics d = validate(j);
  if (!d.ok) throw DomainError("invalid generalized complex structure: " + d.failures.front(), d.residual);
  linalg::LinearMap map;
  std::size_t n2 = j.matrix().size();
  map.domain_dim = n2;
  for (std::size_t c = 0; c < n2; ++c) {
    WVector col = column(j, static_cast<int>(c));
    col[c] -= Gaussian::i();
    map.columns.push_back(wvector_to_sparse(col));
  }
  auto ki = linalg::analyze(map);
  IsotropicSubspace l;
  l.dim_v = j.dim();
  for (const auto& v : ki.kernel) l.basis.push_back(linalg::to_dense(v, n2));
  if (static_cast<int>(l.dim()) != j.dim())
    throw DomainError("sqrt(-1)-eigenspace has dimension " + std::to_string(l.dim()) + ", expected " +
                      std::to_string(j.dim()));
  return l;
}

int type_of(const GCMap& j) {
  IsotropicSubspace l = i_eigenspace(j);
  std::vector<SparseVector> proj;
  for (const auto& v : l.basis)
    proj.push_back(linalg::from_dense(WVector(v.begin(), v.begin() + j.dim())));
  return j.dim() - static_cast<int>(linalg::rank(proj));
}

Form pure_spinor(const IsotropicSubspace& l) {
  int n = l.dim_v;
  if (n > 16) throw DomainError("pure spinor solve limited to 16 generators");
  std::size_t forms = std::size_t{1} << n;
  linalg::LinearMap map;
  map.domain_dim = forms;
  for (std::size_t m = 0; m < forms; ++m) {
    Form basis_form = Form::monomial(n, static_cast<Mask>(m));
    SparseVector col;
    for (std::size_t r = 0; r < l.basis.size(); ++r) {
      for (const auto& [idx, v] : linalg::to_vector(clifford(l.basis[r], basis_form)))
        col.emplace_back(r * forms + idx, v);
    }
    map.columns.push_back(std::move(col));
  }
  auto ki = linalg::analyze(map);
  if (ki.kernel.size() != 1)
    throw DomainError("annihilator of L has dimension " + std::to_string(ki.kernel.size()) + ", expected 1");
  Form phi = linalg::to_form(n, ki.kernel.front());
  Mask lead = phi.terms().begin()->first;
  for (const auto& [m, c] : phi.terms())
    if (mask_less(m, lead)) lead = m;
  return phi * Scalar(phi.coefficient(lead).constant_value().inverse());
}

AnnihilatorResult annihilator(const Form& phi) {
  if (phi.is_zero()) throw DomainError("annihilator of the zero form");
  int n = phi.generators();
  linalg::LinearMap map;
  map.domain_dim = static_cast<std::size_t>(2 * n);
  for (int a = 0; a < 2 * n; ++a) {
    WVector v(static_cast<std::size_t>(2 * n));
    v[static_cast<std::size_t>(a)] = 1;
    map.columns.push_back(linalg::to_vector(clifford(v, phi)));
  }
  auto ki = linalg::analyze(map);
  AnnihilatorResult r;
  r.space.dim_v = n;
  for (const auto& v : ki.kernel) r.space.basis.push_back(linalg::to_dense(v, static_cast<std::size_t>(2 * n)));
  r.maximal_isotropic = static_cast<int>(r.space.dim()) == n && is_isotropic(r.space);
  r.nondegenerate = !mukai(phi, phi.conj()).is_zero();
  std::vector<SparseVector> both;
  for (const auto& v : r.space.basis) {
    both.push_back(linalg::from_dense(v));
    both.push_back(linalg::from_dense(conj(v)));
  }
  r.transverse = linalg::rank(both) == 2 * r.space.dim();
  return r;
}

GCMap b_transform(const GCMap& j, const Form& b) {
  if (b.generators() != j.dim()) throw DomainError("B-field generator count mismatch");
  Matrix w = b.is_zero() ? zero_matrix(static_cast<std::size_t>(j.dim())) : two_form_matrix(b);
  auto n = static_cast<std::size_t>(j.dim());
  Matrix e = GCMap::identity(j.dim()).matrix();
  Matrix einv = e;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      e[n + r][c] = w[r][c];
      einv[n + r][c] = -w[r][c];
    }
  return GCMap(j.dim(), e) * j * GCMap(j.dim(), einv);
}

Form clifford_lift(const GCMap& j, const Form& phi) {
  LiftNormalization norm = lift_normalization(j);
  Form out = raw_lift(j, phi);
  if (norm.sign < 0) out = -out;
  return out + phi * Scalar(norm.shift);
}

std::vector<GradingComponent> uk_grading(const GCMap& j) {
  int n = j.dim();
  if (n % 2 != 0) throw DomainError("U^k grading needs an even-dimensional V");
  if (n > 12) throw DomainError("U^k grading limited to 12 generators");
  LiftNormalization norm = lift_normalization(j);
  std::size_t forms = std::size_t{1} << n;
  std::vector<SparseVector> lift_columns;
  for (std::size_t m = 0; m < forms; ++m) {
    Form basis_form = Form::monomial(n, static_cast<Mask>(m));
    Form img = raw_lift(j, basis_form);
    if (norm.sign < 0) img = -img;
    img += basis_form * Scalar(norm.shift);
    lift_columns.push_back(linalg::to_vector(img));
  }
  int half = n / 2;
  std::vector<GradingComponent> out;
  std::size_t total = 0;
  for (int k = -half; k <= half; ++k) {
    GradingComponent comp;
    comp.k = k;
    Gaussian shift(Rational(0), Rational(k));  // (lift + k i) phi = 0
    // The lift preserves parity, so each eigenspace is solved per parity.
    for (int parity = 0; parity < 2; ++parity) {
      std::vector<std::size_t> masks;
      for (std::size_t m = 0; m < forms; ++m)
        if (std::popcount(m) % 2 == parity) masks.push_back(m);
      linalg::LinearMap map;
      map.domain_dim = masks.size();
      for (std::size_t m : masks) map.columns.push_back(linalg::axpy(lift_columns[m], shift, linalg::unit(m)));
      for (const auto& v : linalg::analyze(map).kernel) {
        SparseVector global;
        for (const auto& [idx, x] : v) global.emplace_back(masks[idx], x);
        comp.basis.push_back(linalg::to_form(n, global));
      }
    }
    total += comp.basis.size();
    out.push_back(std::move(comp));
  }
  if (total != forms)
    throw DomainError("Clifford lift spectrum is not contained in {-n..n}(-i): eigenvectors span " +
                      std::to_string(total) + " of " + std::to_string(forms));
  return out;
}

Diagnostics kahler_check(const GCMap& j1, const GCMap& j2) {
  Diagnostics d;
  if (j1.dim() != j2.dim()) throw DomainError("GC map dimension mismatch");
  for (const auto* j : {&j1, &j2}) {
    Diagnostics v = validate(*j);
    if (!v.ok) d.fail("invalid structure: " + v.failures.front());
  }
  if (!d.ok) return d;
  GCMap p12 = j1 * j2;
  if (!(p12 == j2 * j1)) d.fail("J1 and J2 do not commute");
  std::size_t n2 = j1.matrix().size();
  std::vector<std::vector<Gaussian>> q(n2, std::vector<Gaussian>(n2));
  for (std::size_t a = 0; a < n2; ++a) {
    WVector ua(n2);
    ua[a] = 1;
    WVector image = p12.apply(ua);
    for (auto& x : image) x = -x;
    for (std::size_t b = 0; b < n2; ++b) {
      WVector ub(n2);
      ub[b] = 1;
      q[a][b] = pairing(image, ub);
    }
  }
  for (std::size_t a = 0; a < n2; ++a)
    for (std::size_t b = a + 1; b < n2; ++b)
      if (!(q[a][b] == q[b][a])) {
        d.fail("<-J1 J2 ., .> is not symmetric");
        a = n2;
        break;
      }
  auto minors = linalg::leading_minors(q);
  for (std::size_t k = 0; k < minors.size(); ++k) {
    if (!minors[k].is_real() || sgn(minors[k].re()) <= 0) {
      d.fail("<-J1 J2 ., .> is not positive definite",
             "leading minor " + std::to_string(k + 1) + " = " + minors[k].to_string());
      break;
    }
  }
  return d;
}

}  // namespace gcdh
