#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lifthull/linalg.hpp"

namespace lifthull {

// Optimum of  min || sum_j lambda_j u_j ||^2  over  lambda >= 0,
// sum_j lambda_j t_j = 1.
struct QpResult {
  Rational min_sq;
  std::vector<Rational> lambda;
  Vec y;        // sum_j lambda_j u_j
  Rational mu;  // multiplier of the affine constraint
};

namespace detail {

inline Vec qp_combine(const Mat& u, const std::vector<Rational>& lambda) {
  Vec y(u[0].size(), Rational(0));
  for (size_t j = 0; j < u.size(); ++j)
    if (!lambda[j].is_zero()) y = vec_add(y, vec_scale(lambda[j], u[j]));
  return y;
}

// Minimize over the affine slice spanned by the active set: lambda_p is
// eliminated via the constraint, the rest solve PSD normal equations.
// Returns lambda restricted to `active` (full-length vector, zeros outside).
inline std::vector<Rational> qp_equality_solve(const Mat& u,
                                               const std::vector<Rational>& t,
                                               const std::vector<int>& active) {
  size_t p = 0;
  while (p < active.size() && t[size_t(active[p])].is_zero()) ++p;
  if (p == active.size())
    throw std::logic_error("qp: active set lost the constraint");
  int pi = active[p];
  Vec y0 = vec_scale(Rational(1) / t[size_t(pi)], u[size_t(pi)]);
  std::vector<int> free;
  for (size_t j = 0; j < active.size(); ++j)
    if (j != p) free.push_back(active[j]);
  std::vector<Rational> lambda(u.size(), Rational(0));
  if (free.empty()) {
    lambda[size_t(pi)] = Rational(1) / t[size_t(pi)];
    return lambda;
  }
  Mat dirs;
  for (int j : free)
    dirs.push_back(vec_sub(
        u[size_t(j)],
        vec_scale(t[size_t(j)] / t[size_t(pi)], u[size_t(pi)])));
  Mat gram(free.size(), Vec(free.size()));
  Vec rhs(free.size());
  for (size_t a = 0; a < free.size(); ++a) {
    for (size_t b = 0; b <= a; ++b) {
      gram[a][b] = dot(dirs[a], dirs[b]);
      gram[b][a] = gram[a][b];
    }
    rhs[a] = -dot(dirs[a], y0);
  }
  auto sol = solve(gram, rhs);
  if (!sol) throw std::logic_error("qp: inconsistent normal equations");
  Rational acc(0);
  for (size_t a = 0; a < free.size(); ++a) {
    lambda[size_t(free[a])] = (*sol)[a];
    acc += t[size_t(free[a])] * (*sol)[a];
  }
  lambda[size_t(pi)] = (Rational(1) - acc) / t[size_t(pi)];
  return lambda;
}

// Exact KKT certificate; sufficient for global optimality (convex problem).
inline bool qp_kkt_holds(const Mat& u, const std::vector<Rational>& t,
                         const std::vector<Rational>& lambda, const Vec& y,
                         const Rational& mu) {
  Rational total(0);
  for (size_t j = 0; j < u.size(); ++j) {
    if (lambda[j].sign() < 0) return false;
    total += lambda[j] * t[j];
    Rational nu = Rational(2) * dot(u[j], y) - mu * t[j];
    if (nu.sign() < 0) return false;
    if (!(lambda[j] * nu).is_zero()) return false;
  }
  return total == Rational(1);
}

inline QpResult qp_package(const Mat& u, const std::vector<Rational>& t,
                           std::vector<Rational> lambda) {
  QpResult r;
  r.y = qp_combine(u, lambda);
  r.min_sq = norm_sq(r.y);
  // mu from any active generator with t != 0 (one exists by feasibility).
  r.mu = Rational(0);
  for (size_t j = 0; j < u.size(); ++j)
    if (lambda[j].sign() > 0 && !t[j].is_zero()) {
      r.mu = Rational(2) * dot(u[j], r.y) / t[j];
      break;
    }
  r.lambda = std::move(lambda);
  return r;
}

}  // namespace detail

// nullopt iff infeasible (no t_j > 0). Primal active-set method, Bland-style
// smallest-index selection; the returned witness carries an exact KKT
// certificate, verified before returning.
inline std::optional<QpResult> min_norm_qp(const Mat& u,
                                           const std::vector<Rational>& t) {
  if (u.size() != t.size()) throw std::invalid_argument("qp: size mismatch");
  size_t n = u.size();
  int start = -1;
  for (size_t j = 0; j < n; ++j)
    if (t[j].sign() > 0) {
      start = int(j);
      break;
    }
  if (start < 0) return std::nullopt;

  std::vector<Rational> lambda(n, Rational(0));
  lambda[size_t(start)] = Rational(1) / t[size_t(start)];
  std::vector<int> active = {start};

  auto finish_if_optimal =
      [&](const std::vector<Rational>& lam) -> std::optional<QpResult> {
    QpResult r = detail::qp_package(u, t, lam);
    bool in_active = detail::qp_kkt_holds(u, t, r.lambda, r.y, r.mu);
    if (!in_active) return std::nullopt;
    return r;
  };

  size_t cap = 1000 + 50 * n;
  for (size_t iter = 0; iter < cap; ++iter) {
    std::vector<Rational> cand = detail::qp_equality_solve(u, t, active);
    bool nonneg = true;
    for (int j : active)
      if (cand[size_t(j)].sign() < 0) nonneg = false;
    if (nonneg) {
      lambda = cand;
      Vec y = detail::qp_combine(u, lambda);
      // Pick mu from the eliminated pivot's stationarity.
      Rational mu(0);
      for (int j : active)
        if (!t[size_t(j)].is_zero()) {
          mu = Rational(2) * dot(u[size_t(j)], y) / t[size_t(j)];
          break;
        }
      int entering = -1;
      for (size_t j = 0; j < n; ++j) {
        if (std::find(active.begin(), active.end(), int(j)) != active.end())
          continue;
        Rational nu = Rational(2) * dot(u[j], y) - mu * t[j];
        if (nu.sign() < 0) {
          entering = int(j);
          break;
        }
      }
      if (entering < 0) {
        QpResult r = detail::qp_package(u, t, lambda);
        if (!detail::qp_kkt_holds(u, t, r.lambda, r.y, r.mu))
          throw std::logic_error("qp: certificate failed at optimum");
        return r;
      }
      active.push_back(entering);
      std::sort(active.begin(), active.end());
    } else {
      // Step toward cand until the first coordinate hits zero; Bland-style
      // smallest-index blocker leaves the active set.
      Rational alpha(1);
      int blocker = -1;
      for (int j : active) {
        Rational d = cand[size_t(j)] - lambda[size_t(j)];
        if (d.sign() >= 0) continue;
        Rational a = lambda[size_t(j)] / (-d);
        if (blocker < 0 || a < alpha) {
          alpha = a;
          blocker = j;
        }
      }
      if (blocker < 0) throw std::logic_error("qp: lost blocking constraint");
      for (int j : active)
        lambda[size_t(j)] += alpha * (cand[size_t(j)] - lambda[size_t(j)]);
      lambda[size_t(blocker)] = Rational(0);
      active.erase(std::find(active.begin(), active.end(), blocker));
    }
  }

  // Anti-cycling safety net: enumerate active sets outright (never expected).
  if (n > 20) throw std::logic_error("qp: iteration cap exceeded");
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> act;
    bool has_pos_t = false;
    for (size_t j = 0; j < n; ++j)
      if (mask & (1u << j)) {
        act.push_back(int(j));
        has_pos_t = has_pos_t || !t[j].is_zero();
      }
    if (!has_pos_t) continue;
    std::vector<Rational> lam;
    try {
      lam = detail::qp_equality_solve(u, t, act);
    } catch (const std::logic_error&) {
      continue;
    }
    bool nonneg = true;
    for (const auto& l : lam) nonneg = nonneg && l.sign() >= 0;
    if (!nonneg) continue;
    if (auto r = finish_if_optimal(lam)) return r;
  }
  throw std::logic_error("qp: exhaustive fallback found no certificate");
}

}  // namespace lifthull
