#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "lifthull/rational.hpp"

namespace lifthull {

namespace detail {

// Sums prod_i C(n_i, a_i) over signatures with 0 <= a_i <= min(k, n_i),
// |A| = k+1, and admit(A) true.
template <class Admit>
Int weighted_signatures(long k, const std::vector<long>& n, Admit admit) {
  Int total = 0;
  std::vector<long> a(n.size(), 0);
  auto rec = [&](auto&& self, size_t i, long left) -> void {
    if (i == n.size()) {
      if (left != 0 || !admit(a)) return;
      Int prod = 1;
      for (size_t j = 0; j < n.size(); ++j)
        prod *= binomial(ulong(n[j]), ulong(a[j]));
      total += prod;
      return;
    }
    long hi = std::min({k, left, n[i]});
    for (a[i] = 0; a[i] <= hi; ++a[i]) self(self, i + 1, left - a[i]);
    a[i] = 0;
  };
  rec(rec, 0, k + 1);
  return total;
}

}  // namespace detail

// Sum of prod_i C(n_i, alpha_i) over signatures A with
// (0,...,0,1) <= A <= (k,...,k) and |A| = k+1: the exact upper bound on the
// number of k-faces crossing the gap below the last layer.
inline Int fbound_formula(long k, const std::vector<long>& n) {
  if (k < 1) throw std::invalid_argument("fbound_formula: need k >= 1");
  if (n.empty()) throw std::invalid_argument("fbound_formula: no layers");
  return detail::weighted_signatures(
      k, n, [](const std::vector<long>& a) { return a.back() >= 1; });
}

// Generalization to an arbitrary gap g (1-based, between layers g and g+1):
// admissible signatures need weight on both sides of the gap.  At g = m-1
// this coincides with fbound_formula.  Valid for every stacked hull: each
// crossing k-face spans an affinely independent (k+1)-subset of its vertices
// with points on both sides, and distinct faces span distinct subsets.
inline Int crossing_bound(long k, const std::vector<long>& n, size_t g) {
  if (k < 1) throw std::invalid_argument("crossing_bound: need k >= 1");
  if (g < 1 || g >= n.size())
    throw std::invalid_argument("crossing_bound: gap index out of range");
  return detail::weighted_signatures(k, n, [&](const std::vector<long>& a) {
    long low = 0, high = 0;
    for (size_t j = 0; j < n.size(); ++j) (j < g ? low : high) += a[j];
    return low >= 1 && high >= 1;
  });
}

// Worst-case hull complexity scale: sum over ordered pairs i != j of
// n_i * n_j^floor(d/2).  The sharp regime is odd d >= 3.
inline Int master_bound(const std::vector<long>& n, long d) {
  if (d < 1) throw std::invalid_argument("master_bound: need d >= 1");
  Int total = 0;
  for (size_t i = 0; i < n.size(); ++i)
    for (size_t j = 0; j < n.size(); ++j) {
      if (i == j) continue;
      Int term = n[i];
      for (long e = 0; e < d / 2; ++e) term *= n[j];
      total += term;
    }
  return total;
}

inline bool master_bound_in_regime(long d) { return d >= 3 && d % 2 == 1; }

}  // namespace lifthull
