#pragma once

#include <stdexcept>

#include "lifthull/layers.hpp"
#include "lifthull/slice.hpp"

namespace lifthull {

// Two summands in E^d plus an exact weight strictly inside (0,1); the sum
// realized is (1-lambda)P + lambda*Q.
struct WeightedSumSpec {
  Mat P, Q;
  Rational lambda;
};

inline void validate(const WeightedSumSpec& spec) {
  if (spec.P.empty() || spec.Q.empty())
    throw std::invalid_argument("weighted sum: both summands need points");
  if (!(Rational(0) < spec.lambda && spec.lambda < Rational(1)))
    throw std::invalid_argument("weighted sum: weight must lie in (0,1)");
  size_t d = spec.P[0].size();
  if (d == 0) throw std::invalid_argument("weighted sum: zero-dimensional points");
  for (const auto& p : spec.P)
    if (p.size() != d)
      throw std::invalid_argument("weighted sum: point dimension mismatch");
  for (const auto& q : spec.Q)
    if (q.size() != d)
      throw std::invalid_argument("weighted sum: point dimension mismatch");
}

// Section route: stack P at height 0 and Q at height 1, hull, and cut at
// x_{d+1} = lambda.  A section point is (1-a)(p,0) + a(q',1) with a = lambda,
// so dropping the last coordinate lands exactly on the weighted sum; no
// rescaling is needed and all coordinates stay exact.
inline FaceLattice weighted_minkowski(const WeightedSumSpec& spec) {
  validate(spec);
  size_t d = spec.P[0].size();
  LayeredPointSet lp;
  lp.dim = d;
  lp.layers.push_back({Rational(0), spec.P});
  lp.layers.push_back({Rational(1), spec.Q});
  FaceLattice stacked = stacked_hull(lp);

  Hyperplane plane;
  plane.normal.assign(d + 1, Rational(0));
  plane.normal[d] = Rational(1);
  plane.offset = spec.lambda;
  SliceResult sec = slice(stacked, plane);

  Mat pts;
  for (const auto& x : sec.lattice.vertex_coords) {
    if (x.back() != spec.lambda)
      throw std::logic_error("weighted sum: section point left the plane");
    pts.push_back(Point(x.begin(), x.end() - 1));
  }
  FaceLattice out = hull(pts);
  // Dropping a coordinate that is constant on the section is an affine
  // isomorphism, so every section vertex stays extreme.
  if (out.n_vertices() != pts.size())
    throw std::logic_error("weighted sum: projection lost a vertex");
  return out;
}

// Oracle: hull of every pairwise combination.  Quadratic work up front, but
// exact by convexity; used to cross-check the section route.
inline FaceLattice minkowski_oracle(const WeightedSumSpec& spec) {
  validate(spec);
  size_t d = spec.P[0].size();
  Rational mu = Rational(1) - spec.lambda;
  Mat pts;
  pts.reserve(spec.P.size() * spec.Q.size());
  for (const auto& p : spec.P)
    for (const auto& q : spec.Q) {
      Point x(d);
      for (size_t j = 0; j < d; ++j) x[j] = mu * p[j] + spec.lambda * q[j];
      pts.push_back(std::move(x));
    }
  return hull(pts);
}

}  // namespace lifthull
