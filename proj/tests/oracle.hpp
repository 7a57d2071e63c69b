#pragma once

// Dense brute-force reference for twisted cohomology of real invariant
// models. Signs come from explicit index lists and bubble sort; ranks from
// plain Gauss-Jordan on mpq matrices. Shares nothing with the sparse engine.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Index = std::vector<int>;               // increasing generator indices, zero-based
using Dense = std::map<Index, Q>;             // exterior element

struct RealModel {
  int n = 0;
  std::vector<Dense> d_table;  // d of each generator
  Dense h;
};

// Sign of sorting the concatenation; 0 on repeated index.
inline int merge_sign(const Index& a, const Index& b, Index& out) {
  out = a;
  out.insert(out.end(), b.begin(), b.end());
  int sign = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j + 1 < out.size() - i; ++j) {
      if (out[j] == out[j + 1]) return 0;
      if (out[j] > out[j + 1]) {
        std::swap(out[j], out[j + 1]);
        sign = -sign;
      }
    }
  for (std::size_t j = 0; j + 1 < out.size(); ++j)
    if (out[j] == out[j + 1]) return 0;
  return sign;
}

inline Dense wedge(const Dense& a, const Dense& b) {
  Dense r;
  for (const auto& [ia, ca] : a)
    for (const auto& [ib, cb] : b) {
      Index m;
      int s = merge_sign(ia, ib, m);
      if (s == 0) continue;
      r[m] += s * ca * cb;
    }
  for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

inline Dense d(const RealModel& m, const Index& mono) {
  // d(e_{a1}...e_{ak}) = sum_p (-1)^p e_{a1..a(p-1)} d(e_ap) e_{a(p+1)..}
  Dense r;
  for (std::size_t p = 0; p < mono.size(); ++p) {
    Dense before{{Index(mono.begin(), mono.begin() + static_cast<long>(p)), Q(1)}};
    Dense after{{Index(mono.begin() + static_cast<long>(p) + 1, mono.end()), Q(1)}};
    Dense term = wedge(wedge(before, m.d_table[static_cast<std::size_t>(mono[p])]), after);
    for (const auto& [i, c] : term) r[i] += (p % 2 == 0 ? 1 : -1) * c;
  }
  for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

inline std::vector<Index> all_indices(int n) {
  std::vector<Index> out;
  for (unsigned s = 0; s < (1u << n); ++s) {
    Index i;
    for (int b = 0; b < n; ++b)
      if ((s >> b) & 1u) i.push_back(b);
    out.push_back(i);
  }
  return out;
}

inline std::size_t dense_rank(std::vector<std::vector<Q>> a) {
  std::size_t rank = 0;
  std::size_t rows = a.size();
  std::size_t cols = rows == 0 ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      Q f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// (even, odd) ranks of ker d_H / im d_H with d_H = d - H^.
inline std::pair<std::size_t, std::size_t> twisted_betti(const RealModel& m) {
  std::vector<Index> basis = all_indices(m.n);
  std::map<Index, std::size_t> pos;
  for (std::size_t k = 0; k < basis.size(); ++k) pos[basis[k]] = k;
  std::size_t dim = basis.size();
  // Full dense matrix; column k = d_H(basis[k]).
  std::vector<std::vector<Q>> even_block, odd_block;  // rows: images of even / odd basis elements
  std::size_t even_dim = 0, odd_dim = 0;
  for (const auto& b : basis) {
    Dense img = d(m, b);
    for (const auto& [i, c] : wedge(m.h, Dense{{b, Q(1)}})) img[i] -= c;
    std::vector<Q> row(dim, Q(0));
    for (const auto& [i, c] : img) row[pos[i]] = c;
    if (b.size() % 2 == 0) {
      ++even_dim;
      even_block.push_back(row);
    } else {
      ++odd_dim;
      odd_block.push_back(row);
    }
  }
  std::size_t re = dense_rank(even_block);
  std::size_t ro = dense_rank(odd_block);
  return {even_dim - re - ro, odd_dim - ro - re};
}

}  // namespace oracle
