#pragma once

// Integer matrix utilities: column-style Hermite normal form (lower
// triangular, positive diagonal, off-diagonal entries reduced), with an
// optional recorded unimodular transform so module elements can be expressed
// in terms of the original generators.

#include <hmf/rational.hpp>

#include <optional>

namespace hmf {

// Matrices are stored row-major: m[i][j] is row i, column j.
using ZMat = std::vector<std::vector<Int>>;

inline ZMat zmat_identity(size_t n) {
  ZMat m(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

namespace detail {
inline void col_swap(ZMat& m, size_t a, size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}
inline void col_addmul(ZMat& m, size_t dst, size_t src, const Int& f) {
  for (auto& row : m) row[dst] += f * row[src];
}
inline void col_neg(ZMat& m, size_t a) {
  for (auto& row : m) row[a] = -row[a];
}
}  // namespace detail

// Column HNF of an n x k matrix (k >= n, columns span a rank-n module).
// Returns the n x n lower-triangular basis.  If `transform` is non-null it
// receives the k x k unimodular U with  A * U = [H | 0].
inline ZMat hnf_columns(ZMat a, ZMat* transform = nullptr) {
  size_t n = a.size();
  size_t k = n ? a[0].size() : 0;
  ZMat u = zmat_identity(k);
  auto apply = [&](auto&& fn) {
    fn(a);
    fn(u);
  };
  size_t piv = 0;
  for (size_t i = 0; i < n && piv < k; ++i) {
    // Euclidean elimination across columns piv..k-1 on row i.
    while (true) {
      size_t best = k;
      for (size_t j = piv; j < k; ++j)
        if (a[i][j] != 0 &&
            (best == k || abs(a[i][j]) < abs(a[i][best])))
          best = j;
      if (best == k) break;  // row entirely zero beyond pivot
      if (best != piv)
        apply([&](ZMat& m) { detail::col_swap(m, piv, best); });
      bool done = true;
      for (size_t j = piv + 1; j < k; ++j) {
        if (a[i][j] == 0) continue;
        Int q = fdiv(a[i][j], a[i][piv]);
        apply([&](ZMat& m) { detail::col_addmul(m, j, piv, -q); });
        if (a[i][j] != 0) done = false;
      }
      if (done) break;
    }
    if (piv < k && a[i][piv] != 0) {
      if (a[i][piv] < 0) apply([&](ZMat& m) { detail::col_neg(m, piv); });
      // reduce earlier columns at row i
      for (size_t j = 0; j < piv; ++j) {
        Int q = fdiv(a[i][j], a[i][piv]);
        if (q != 0) apply([&](ZMat& m) { detail::col_addmul(m, j, piv, -q); });
      }
      ++piv;
    }
  }
  if (piv != n) throw invalid_input("hnf_columns: module has rank < n");
  ZMat h(n, std::vector<Int>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) h[i][j] = a[i][j];
  if (transform) *transform = std::move(u);
  return h;
}

// Solve H y = v for integer y where H is square lower triangular with
// nonzero diagonal.  Returns nullopt if no integral solution.
inline std::optional<std::vector<Int>> solve_lower_triangular(
    const ZMat& h, const std::vector<Int>& v) {
  size_t n = h.size();
  std::vector<Int> y(n, 0);
  for (size_t i = 0; i < n; ++i) {
    Int rhs = v[i];
    for (size_t j = 0; j < i; ++j) rhs -= h[i][j] * y[j];
    if (rhs % h[i][i] != 0) return std::nullopt;
    y[i] = rhs / h[i][i];
  }
  return y;
}

// Canonical representative of v modulo the column span of H (lower
// triangular HNF): reduce top-down so 0 <= r_i < H[i][i] after accounting
// for earlier reductions.
inline std::vector<Int> reduce_mod_hnf(const ZMat& h, std::vector<Int> v) {
  size_t n = h.size();
  for (size_t i = 0; i < n; ++i) {
    Int q = fdiv(v[i], h[i][i]);
    if (q != 0)
      for (size_t r = i; r < n; ++r) v[r] -= q * h[r][i];
  }
  return v;
}

inline Int diag_product(const ZMat& h) {
  Int d = 1;
  for (size_t i = 0; i < h.size(); ++i) d *= h[i][i];
  return d;
}

inline ZMat mat_mul(const ZMat& a, const ZMat& b) {
  size_t n = a.size(), m = b[0].size(), k = b.size();
  ZMat c(n, std::vector<Int>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

inline std::vector<Int> mat_vec(const ZMat& a, const std::vector<Int>& x) {
  std::vector<Int> r(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) r[i] += a[i][j] * x[j];
  return r;
}

}  // namespace hmf
