#pragma once

#include <optional>
#include <vector>

#include "lifthull/rational.hpp"

namespace lifthull {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;  // row-major

inline Vec vec_add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec vec_scale(const Rational& s, const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline Rational dot(const Vec& a, const Vec& b) {
  Rational r;
  for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

inline bool is_zero_vec(const Vec& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

inline Rational norm_sq(const Vec& a) { return dot(a, a); }

// Row echelon form in place. Returns pivot columns. Pivot choice: first
// nonzero entry in the column order given (exactness makes any choice valid).
inline std::vector<size_t> row_echelon(Mat& m) {
  std::vector<size_t> pivots;
  if (m.empty()) return pivots;
  size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = Rational(1) / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline size_t rank(Mat m) { return row_echelon(m).size(); }

// Basis of {x : m x = 0}, one vector per row of the result.
inline Mat nullspace(const Mat& m) {
  if (m.empty()) return {};
  size_t cols = m[0].size();
  Mat red = m;
  std::vector<size_t> pivots = row_echelon(red);
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  Mat basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols, Rational(0));
    v[free] = Rational(1);
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -red[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solves m x = b exactly; free variables set to 0; nullopt if inconsistent.
inline std::optional<Vec> solve(const Mat& m, const Vec& b) {
  size_t rows = m.size();
  size_t cols = rows == 0 ? 0 : m[0].size();
  Mat aug(rows, Vec(cols + 1));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) aug[i][j] = m[i][j];
    aug[i][cols] = b[i];
  }
  std::vector<size_t> pivots = row_echelon(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  Vec x(cols, Rational(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
  return x;
}

inline std::optional<Mat> invert(const Mat& m) {
  size_t n = m.size();
  Mat aug(n, Vec(2 * n, Rational(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = Rational(1);
  }
  std::vector<size_t> pivots = row_echelon(aug);
  if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
  Mat inv(n, Vec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

inline Rational det(Mat m) {
  size_t n = m.size();
  Rational d(1);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    Rational inv = Rational(1) / m[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      Rational f = m[i][c] * inv;
      for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d;
}

inline int det_sign(const Mat& m) { return det(m).sign(); }

// Transpose helper for column-oriented constructions.
inline Mat transpose(const Mat& m) {
  if (m.empty()) return {};
  Mat t(m[0].size(), Vec(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

}  // namespace lifthull
