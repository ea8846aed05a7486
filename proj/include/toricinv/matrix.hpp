#pragma once

// Exact integer/rational linear algebra used by the lattice and polyhedral
// layers: rank, linear solves, determinants, Hermite normal form, and
// integer kernels. Everything is dense; dimensions in this library are tiny.

#include <algorithm>
#include <optional>

#include "toricinv/arith.hpp"

namespace toricinv {

inline QMat to_qmat(const IMat& a) {
  QMat q(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    q[i].reserve(a[i].size());
    for (const Int& x : a[i]) q[i].emplace_back(x);
  }
  return q;
}

/// Row rank over Q (in-place Gaussian elimination on a copy).
inline int rank_rat(QMat m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Rat f = m[i][c] / m[r][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

inline int rank_int(const IMat& a) { return rank_rat(to_qmat(a)); }

/// Solves A x = b over Q (A as row-major m x n). Returns std::nullopt when
/// inconsistent; free variables are set to zero.
inline std::optional<QVec> solve_rat(QMat a, QVec b) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c] / a[r][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  QVec x(cols, Rat(0));
  for (size_t k = 0; k < pivot_col.size(); ++k) {
    int c = pivot_col[k];
    x[c] = b[k] / a[k][c];
  }
  return x;
}

inline std::optional<QVec> solve_int(const IMat& a, const IVec& b) {
  QVec bq;
  bq.reserve(b.size());
  for (const Int& x : b) bq.emplace_back(x);
  return solve_rat(to_qmat(a), bq);
}

/// Determinant of a square integer matrix (Bareiss fraction-free).
inline Int det_int(IMat m) {
  size_t n = m.size();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        m[i][j] = int_divexact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// Row-style Hermite normal form. Returns the nonzero rows (the canonical
/// basis of the row lattice): pivots positive, entries above each pivot
/// reduced into [0, pivot).
inline IMat hnf_rows(IMat a) {
  if (a.empty()) return {};
  size_t rows = a.size(), cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    for (size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      if (a[r][c] == 0) {
        std::swap(a[r], a[i]);
        continue;
      }
      Int x, y;
      Int g = int_gcdext(a[r][c], a[i][c], x, y);
      Int ar = int_divexact(a[r][c], g), ai = int_divexact(a[i][c], g);
      for (size_t j = 0; j < cols; ++j) {
        Int nr = x * a[r][j] + y * a[i][j];
        Int ni = ar * a[i][j] - ai * a[r][j];
        a[r][j] = nr;
        a[i][j] = ni;
      }
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0)
      for (size_t j = 0; j < cols; ++j) a[r][j] = -a[r][j];
    for (size_t i = 0; i < r; ++i) {
      if (a[i][c] == 0) continue;
      Int f = int_fdiv(a[i][c], a[r][c]);
      for (size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  a.resize(r);
  return a;
}

/// Hermite form with a unimodular transform: returns (H, U) where
/// U * A = [H; 0] with U unimodular. Rows of U past rank(A) span the left
/// integer kernel { x : x A = 0 } (a saturated lattice).
inline std::pair<IMat, IMat> hnf_rows_with_transform(IMat a) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  IMat u(rows, IVec(rows, 0));
  for (size_t i = 0; i < rows; ++i) u[i][i] = 1;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    for (size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      if (a[r][c] == 0) {
        std::swap(a[r], a[i]);
        std::swap(u[r], u[i]);
        continue;
      }
      Int x, y;
      Int g = int_gcdext(a[r][c], a[i][c], x, y);
      Int ar = int_divexact(a[r][c], g), ai = int_divexact(a[i][c], g);
      for (size_t j = 0; j < cols; ++j) {
        Int nr = x * a[r][j] + y * a[i][j];
        Int ni = ar * a[i][j] - ai * a[r][j];
        a[r][j] = nr;
        a[i][j] = ni;
      }
      for (size_t j = 0; j < rows; ++j) {
        Int nr = x * u[r][j] + y * u[i][j];
        Int ni = ar * u[i][j] - ai * u[r][j];
        u[r][j] = nr;
        u[i][j] = ni;
      }
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0) {
      for (size_t j = 0; j < cols; ++j) a[r][j] = -a[r][j];
      for (size_t j = 0; j < rows; ++j) u[r][j] = -u[r][j];
    }
    for (size_t i = 0; i < r; ++i) {
      if (a[i][c] == 0) continue;
      Int f = int_fdiv(a[i][c], a[r][c]);
      for (size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
      for (size_t j = 0; j < rows; ++j) u[i][j] -= f * u[r][j];
    }
    ++r;
  }
  a.resize(r);
  return {a, u};
}

/// Basis of the integer kernel { x in Z^n : A x = 0 } of an m x n integer
/// matrix, as rows. The kernel lattice is saturated by construction.
inline IMat kernel_int(const IMat& a, size_t ncols) {
  // Work on A^T so that row transforms act on candidate kernel vectors.
  IMat at(ncols, IVec(a.size(), 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < ncols; ++j) at[j][i] = a[i][j];
  auto [h, u] = hnf_rows_with_transform(at);
  IMat ker;
  for (size_t i = h.size(); i < ncols; ++i) ker.push_back(u[i]);
  return hnf_rows(ker);
}

/// gcd of all r x r minors of an integer matrix of rank r: the index of the
/// row lattice inside its saturation (product of elementary divisors).
inline Int minor_gcd_index(const IMat& basis) {
  size_t r = basis.size();
  if (r == 0) return 1;
  size_t cols = basis[0].size();
  Int g = 0;
  std::vector<size_t> comb(r);
  for (size_t i = 0; i < r; ++i) comb[i] = i;
  while (true) {
    IMat sub(r, IVec(r));
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < r; ++j) sub[i][j] = basis[i][comb[j]];
    g = int_gcd(g, det_int(sub));
    long k = static_cast<long>(r) - 1;
    while (k >= 0 && comb[k] == cols - r + k) --k;
    if (k < 0) break;
    ++comb[k];
    for (size_t j = k + 1; j < r; ++j) comb[j] = comb[j - 1] + 1;
  }
  return g < 0 ? Int(-g) : g;
}

}  // namespace toricinv
