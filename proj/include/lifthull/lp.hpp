#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "lifthull/geometry.hpp"

namespace lifthull {

namespace detail {

// Tableau simplex, Bland's rule, exact rationals.
// max c.z subject to E z = f, z >= 0. Returns the full variable vector at an
// optimal basic solution, or nullopt if infeasible. Callers pose bounded
// programs; an unbounded ray is an internal error.
inline std::optional<std::vector<Rational>> simplex_solve(
    Mat E, std::vector<Rational> f, Vec c) {
  size_t m = E.size();
  size_t n = m == 0 ? c.size() : E[0].size();
  for (size_t i = 0; i < m; ++i)
    if (f[i].sign() < 0) {
      for (auto& e : E[i]) e = -e;
      f[i] = -f[i];
    }

  // Tableau over columns: n real vars + m artificials, then rhs.
  size_t cols = n + m;
  Mat T(m, Vec(cols + 1, Rational(0)));
  std::vector<int> basis(m);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) T[i][j] = E[i][j];
    T[i][n + i] = Rational(1);
    T[i][cols] = f[i];
    basis[i] = int(n + i);
  }

  auto pivot = [&](size_t r, size_t j) {
    Rational piv = T[r][j];
    for (auto& e : T[r]) e /= piv;
    for (size_t i = 0; i < m; ++i) {
      if (i == r || T[i][j].is_zero()) continue;
      Rational factor = T[i][j];
      for (size_t k = 0; k <= cols; ++k) T[i][k] -= factor * T[r][k];
    }
    basis[r] = int(j);
  };

  // Reduced costs maintained as a dense row; Bland: smallest improving index.
  auto run = [&](const Vec& obj, size_t active_cols) -> bool {
    Vec red = obj;  // reduced costs of a maximization: pick red[j] > 0
    Rational shift(0);
    for (size_t i = 0; i < m; ++i) {
      if (red[size_t(basis[i])].is_zero()) continue;
      Rational factor = red[size_t(basis[i])];
      for (size_t k = 0; k < active_cols; ++k) red[k] -= factor * T[i][k];
      shift += factor * T[i][cols];
    }
    (void)shift;
    while (true) {
      size_t enter = active_cols;
      for (size_t j = 0; j < active_cols; ++j)
        if (red[j].sign() > 0) {
          enter = j;
          break;
        }
      if (enter == active_cols) return true;  // optimal
      size_t leave = m;
      for (size_t i = 0; i < m; ++i) {
        if (T[i][enter].sign() <= 0) continue;
        if (leave == m) {
          leave = i;
          continue;
        }
        Rational cur = T[i][cols] / T[i][enter];
        Rational best = T[leave][cols] / T[leave][enter];
        if (cur < best || (cur == best && basis[i] < basis[leave])) leave = i;
      }
      if (leave == m) return false;  // unbounded
      pivot(leave, enter);
      Rational factor = red[enter];
      for (size_t k = 0; k < active_cols; ++k) red[k] -= factor * T[leave][k];
    }
  };

  // Phase 1: drive artificials to zero.
  Vec phase1(cols, Rational(0));
  for (size_t j = n; j < cols; ++j) phase1[j] = Rational(-1);
  if (!run(phase1, cols)) throw std::logic_error("simplex: phase 1 unbounded");
  Rational art_sum(0);
  for (size_t i = 0; i < m; ++i)
    if (basis[i] >= int(n)) art_sum += T[i][cols];
  if (art_sum.sign() != 0) return std::nullopt;  // infeasible
  // Pivot residual zero-valued artificials out; drop redundant rows by
  // leaving them basic at zero (their rows are zero over real columns).
  for (size_t i = 0; i < m; ++i) {
    if (basis[i] < int(n)) continue;
    for (size_t j = 0; j < n; ++j)
      if (!T[i][j].is_zero()) {
        pivot(i, j);
        break;
      }
  }

  // Phase 2 over real columns only; artificial columns are ignored (any
  // still-basic artificial sits at value zero in a redundant row).
  Vec phase2(cols, Rational(0));
  for (size_t j = 0; j < n; ++j) phase2[j] = c[j];
  if (!run(phase2, n)) throw std::logic_error("simplex: unbounded objective");

  std::vector<Rational> z(n, Rational(0));
  for (size_t i = 0; i < m; ++i)
    if (basis[i] < int(n)) z[size_t(basis[i])] = T[i][cols];
  return z;
}

// Coordinate-wise witness simplification: each coordinate in turn is replaced
// by the simplest rational strictly inside its exact feasibility interval
// given the others, so every slack stays positive and bit sizes cannot grow.
// Two sweeps let early coordinates profit from room freed by later ones.
inline void simplify_witness(const std::vector<Hyperplane>& hs, Point& x) {
  size_t d = x.size();
  for (int pass = 0; pass < 2; ++pass)
    for (size_t j = 0; j < d; ++j) {
      bool has_lo = false, has_hi = false;
      Rational lo(0), hi(0);
      for (const auto& h : hs) {
        const Rational& aj = h.normal[j];
        if (aj.sign() == 0) continue;
        Rational r = h.offset;
        for (size_t k = 0; k < d; ++k)
          if (k != j) r -= h.normal[k] * x[k];
        Rational b = r / aj;
        if (aj.sign() > 0) {
          if (!has_lo || b > lo) lo = b;
          has_lo = true;
        } else {
          if (!has_hi || b < hi) hi = b;
          has_hi = true;
        }
      }
      if (has_lo && has_hi) {
        if (lo < hi) x[j] = simplest_between(lo, hi);
      } else if (has_lo) {
        x[j] = lo.sign() < 0 ? Rational(0) : Rational(Int(lo.floor() + 1));
      } else if (has_hi) {
        x[j] = hi.sign() > 0 ? Rational(0) : Rational(Int(-(-hi).floor() - 1));
      } else {
        x[j] = Rational(0);
      }
    }
}

}  // namespace detail

// A point x with normal.x > offset strictly for every halfspace (each
// constraint demands the positive side), or nullopt if no such point exists.
// Exact slack maximization: max s subject to -a_i.x + s <= -b_i and s <= 1;
// strict feasibility is equivalent to optimal s > 0. The returned point is
// snapped coordinate-by-coordinate to the simplest rationals whose exact
// feasibility intervals keep every slack positive.
inline std::optional<Point> lp_interior_point(
    const std::vector<Hyperplane>& halfspaces) {
  if (halfspaces.empty())
    throw std::invalid_argument("lp_interior_point: empty system");
  size_t d = halfspaces[0].normal.size();
  size_t m = halfspaces.size();
  for (const auto& h : halfspaces)
    if (h.normal.size() != d)
      throw std::invalid_argument("lp_interior_point: mixed dimensions");

  // Variables: x = xp - xn (2d columns), s, one slack per row, cap slack.
  size_t ns = 2 * d + 1 + m + 1;
  Mat E(m + 1, Vec(ns, Rational(0)));
  std::vector<Rational> f(m + 1, Rational(0));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < d; ++j) {
      E[i][j] = -halfspaces[i].normal[j];
      E[i][d + j] = halfspaces[i].normal[j];
    }
    E[i][2 * d] = Rational(1);
    E[i][2 * d + 1 + i] = Rational(1);
    f[i] = -halfspaces[i].offset;
  }
  E[m][2 * d] = Rational(1);
  E[m][ns - 1] = Rational(1);
  f[m] = Rational(1);
  Vec c(ns, Rational(0));
  c[2 * d] = Rational(1);

  auto z = detail::simplex_solve(std::move(E), std::move(f), std::move(c));
  if (!z) return std::nullopt;  // even the closed system is empty
  Rational s = (*z)[2 * d];
  if (s.sign() <= 0) return std::nullopt;  // no strict interior
  Point x(d);
  for (size_t j = 0; j < d; ++j) x[j] = (*z)[j] - (*z)[d + j];

  detail::simplify_witness(halfspaces, x);
  for (const auto& h : halfspaces)
    if (h.side(x) <= 0)
      throw std::logic_error("lp_interior_point: witness check failed");
  return x;
}

}  // namespace lifthull
