#include "gcdh/linalg.hpp"

#include "gcdh/error.hpp"

namespace gcdh::linalg {

SparseVector axpy(const SparseVector& y, const Gaussian& a, const SparseVector& x) {
  if (a.is_zero()) return y;
  SparseVector out;
  out.reserve(y.size() + x.size());
  auto iy = y.begin();
  auto ix = x.begin();
  while (iy != y.end() || ix != x.end()) {
    if (ix == x.end() || (iy != y.end() && iy->first < ix->first)) {
      out.push_back(*iy++);
    } else if (iy == y.end() || ix->first < iy->first) {
      out.emplace_back(ix->first, a * ix->second);
      ++ix;
    } else {
      Gaussian v = iy->second + a * ix->second;
      if (!v.is_zero()) out.emplace_back(iy->first, std::move(v));
      ++iy;
      ++ix;
    }
  }
  return out;
}

SparseVector scale(const SparseVector& x, const Gaussian& a) {
  if (a.is_zero()) return {};
  SparseVector out;
  out.reserve(x.size());
  for (const auto& [i, v] : x) out.emplace_back(i, v * a);
  return out;
}

SparseVector unit(std::size_t index) { return {{index, Gaussian(1)}}; }

SparseVector conj(const SparseVector& x) {
  SparseVector out;
  out.reserve(x.size());
  for (const auto& [i, v] : x) out.emplace_back(i, v.conj());
  return out;
}

Gaussian dot(const SparseVector& a, const SparseVector& b) {
  Gaussian s;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      s += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return s;
}

SparseVector from_dense(const std::vector<Gaussian>& v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.emplace_back(i, v[i]);
  return out;
}

std::vector<Gaussian> to_dense(const SparseVector& v, std::size_t dim) {
  std::vector<Gaussian> out(dim);
  for (const auto& [i, x] : v) {
    if (i >= dim) throw DomainError("sparse index exceeds dimension");
    out[i] = x;
  }
  return out;
}

SparseVector to_vector(const Form& f) {
  SparseVector out;
  out.reserve(f.terms().size());
  for (const auto& [m, c] : f.terms()) out.emplace_back(static_cast<std::size_t>(m), c.constant_value());
  return out;  // std::map iteration is already increasing in mask
}

Form to_form(int generators, const SparseVector& v) {
  Form f(generators);
  for (const auto& [i, x] : v) f.add(static_cast<Mask>(i), Scalar(x));
  return f;
}

SparseVector Echelon::reduce(SparseVector v, SparseVector* combination) const {
  while (!v.empty()) {
    auto it = rows_.find(v.front().first);
    if (it == rows_.end()) break;
    Gaussian factor = -v.front().second;
    v = axpy(v, factor, it->second.vec);
    if (combination != nullptr) *combination = axpy(*combination, factor, it->second.combination);
  }
  return v;
}

bool Echelon::insert(SparseVector v, SparseVector combination, SparseVector* relation) {
  v = reduce(std::move(v), &combination);
  if (v.empty()) {
    if (relation != nullptr) *relation = std::move(combination);
    return false;
  }
  Gaussian inv = v.front().second.inverse();
  std::size_t lead = v.front().first;
  rows_.emplace(lead, Row{scale(v, inv), scale(combination, inv)});
  return true;
}

std::vector<SparseVector> Echelon::basis() const {
  std::vector<SparseVector> out;
  out.reserve(rows_.size());
  for (const auto& [lead, row] : rows_) out.push_back(row.vec);
  return out;
}

KernelImage analyze(const LinearMap& map) {
  KernelImage result;
  Echelon e;
  for (std::size_t j = 0; j < map.columns.size(); ++j) {
    SparseVector relation;
    if (!e.insert(map.columns[j], unit(j), &relation)) result.kernel.push_back(std::move(relation));
  }
  result.rank = e.rank();
  result.image = e.basis();
  return result;
}

std::size_t rank(const std::vector<SparseVector>& vectors) {
  Echelon e;
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

std::optional<SparseVector> solve(const LinearMap& map, const SparseVector& b) {
  Echelon e;
  for (std::size_t j = 0; j < map.columns.size(); ++j) e.insert(map.columns[j], unit(j));
  SparseVector combination;
  if (!e.reduce(b, &combination).empty()) return std::nullopt;
  return scale(combination, Gaussian(-1));
}

SparseVector apply(const LinearMap& map, const SparseVector& x) {
  SparseVector out;
  for (const auto& [j, v] : x) {
    if (j >= map.columns.size()) throw DomainError("vector exceeds map domain");
    out = axpy(out, v, map.columns[j]);
  }
  return out;
}

std::vector<SparseVector> intersection(const std::vector<SparseVector>& a,
                                       const std::vector<SparseVector>& b) {
  // Relations sum_i s_i a_i - sum_j t_j b_j = 0 give the common vectors sum_i s_i a_i.
  Echelon ea;
  std::vector<SparseVector> a_basis;
  for (const auto& v : a)
    if (ea.insert(v)) a_basis.push_back(v);
  Echelon e;
  std::size_t na = a_basis.size();
  for (std::size_t i = 0; i < na; ++i) e.insert(a_basis[i], unit(i));
  std::vector<SparseVector> out;
  Echelon out_span;
  for (std::size_t j = 0; j < b.size(); ++j) {
    SparseVector relation;
    if (e.insert(b[j], unit(na + j), &relation)) continue;
    SparseVector common;
    for (const auto& [idx, coeff] : relation)
      if (idx < na) common = axpy(common, coeff, a_basis[idx]);
    if (!common.empty() && out_span.insert(common)) out.push_back(std::move(common));
  }
  return out;
}

std::size_t intersection_dim(const std::vector<SparseVector>& a, const std::vector<SparseVector>& b) {
  std::vector<SparseVector> both = a;
  both.insert(both.end(), b.begin(), b.end());
  return rank(a) + rank(b) - rank(both);
}

std::vector<Gaussian> leading_minors(std::vector<std::vector<Gaussian>> m) {
  // Elimination without row exchanges: the k-th leading minor is the product
  // of the first k pivots until one vanishes.
  std::size_t n = m.size();
  std::vector<Gaussian> minors;
  Gaussian det(1);
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k].is_zero()) {
      minors.emplace_back();
      break;
    }
    det *= m[k][k];
    minors.push_back(det);
    Gaussian inv = m[k][k].inverse();
    for (std::size_t r = k + 1; r < n; ++r) {
      if (m[r][k].is_zero()) continue;
      Gaussian f = m[r][k] * inv;
      for (std::size_t c = k; c < n; ++c) m[r][c] -= f * m[k][c];
    }
  }
  return minors;
}

}  // namespace gcdh::linalg
