#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gcdh/form.hpp"
#include "gcdh/scalar.hpp"

namespace gcdh::linalg {

/// Sparse vector over Q(i): (index, value) pairs, strictly increasing indices,
/// no zero values.
using SparseVector = std::vector<std::pair<std::size_t, Gaussian>>;

SparseVector axpy(const SparseVector& y, const Gaussian& a, const SparseVector& x);  // y + a*x
SparseVector scale(const SparseVector& x, const Gaussian& a);
SparseVector unit(std::size_t index);
SparseVector conj(const SparseVector& x);
Gaussian dot(const SparseVector& a, const SparseVector& b);  // bilinear, no conjugation
SparseVector from_dense(const std::vector<Gaussian>& v);
std::vector<Gaussian> to_dense(const SparseVector& v, std::size_t dim);

/// Coefficients of a parameter-free form indexed by mask.
SparseVector to_vector(const Form& f);
Form to_form(int generators, const SparseVector& v);

/// Row echelon accumulator. Rows are kept with unit leading coefficient and
/// distinct leading indices; pivoting always eliminates the smallest index
/// first, so results depend only on insertion order.
class Echelon {
 public:
  /// Reduce v against the stored rows. Returns the residual (empty iff v is in
  /// the span). When `combination` is given it is updated alongside.
  SparseVector reduce(SparseVector v, SparseVector* combination = nullptr) const;
  /// Adds v; returns true when it enlarged the span. A dependent v leaves the
  /// relation (combination minus the reduction) in `relation` when requested.
  bool insert(SparseVector v, SparseVector combination = {}, SparseVector* relation = nullptr);
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }
  std::size_t rank() const { return rows_.size(); }
  /// Stored rows in increasing leading-index order.
  std::vector<SparseVector> basis() const;

 private:
  struct Row {
    SparseVector vec;
    SparseVector combination;
  };
  std::map<std::size_t, Row> rows_;
};

/// Linear map given by the images of the domain basis vectors.
struct LinearMap {
  std::size_t domain_dim = 0;
  std::vector<SparseVector> columns;
};

struct KernelImage {
  std::size_t rank = 0;
  std::vector<SparseVector> kernel;  // in domain coordinates
  std::vector<SparseVector> image;   // echelon basis of the image
};

KernelImage analyze(const LinearMap& map);
std::size_t rank(const std::vector<SparseVector>& vectors);
/// Some x with map(x) = b, or nothing when b is outside the image.
std::optional<SparseVector> solve(const LinearMap& map, const SparseVector& b);
SparseVector apply(const LinearMap& map, const SparseVector& x);

/// Dimension of span(a) intersected with span(b).
std::size_t intersection_dim(const std::vector<SparseVector>& a, const std::vector<SparseVector>& b);
/// Basis of span(a) intersected with span(b).
std::vector<SparseVector> intersection(const std::vector<SparseVector>& a,
                                       const std::vector<SparseVector>& b);

/// Leading principal minors of a dense square matrix, exact. Stops after the
/// first vanishing minor.
std::vector<Gaussian> leading_minors(std::vector<std::vector<Gaussian>> m);

}  // namespace gcdh::linalg
