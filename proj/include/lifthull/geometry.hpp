#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lifthull/linalg.hpp"

namespace lifthull {

using Point = Vec;

// Oriented hyperplane {x : normal . x = offset}. side(p) > 0 is the open
// positive halfspace; facet supports are oriented with the polytope interior
// on the negative side. Invariant after canonicalize(): all entries integer,
// gcd of entries 1, orientation preserved.
struct Hyperplane {
  Vec normal;
  Rational offset;

  int side(const Point& p) const { return (dot(normal, p) - offset).sign(); }

  Rational eval(const Point& p) const { return dot(normal, p) - offset; }

  void canonicalize() {
    Int l(1);
    auto fold_den = [&l](const Rational& x) {
      Int d = x.den();
      Int g;
      mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
      l = l / g * d;
    };
    for (const auto& x : normal) fold_den(x);
    fold_den(offset);
    Int g(0);
    auto scaled = [&](const Rational& x) {
      Rational y = x * Rational(l);
      Int n = y.num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
      return y;
    };
    Vec sn(normal.size());
    for (size_t i = 0; i < normal.size(); ++i) sn[i] = scaled(normal[i]);
    Rational so = scaled(offset);
    if (g == 0) g = 1;
    for (auto& x : sn) x /= Rational(g);
    normal = std::move(sn);
    offset = so / Rational(g);
  }

  // Canonical form ignoring orientation: first nonzero entry positive.
  Hyperplane unoriented() const {
    Hyperplane h = *this;
    h.canonicalize();
    for (const auto& x : h.normal) {
      if (x.is_zero()) continue;
      if (x.sign() < 0) {
        for (auto& y : h.normal) y = -y;
        h.offset = -h.offset;
      }
      break;
    }
    return h;
  }

  bool same_plane(const Hyperplane& o) const {
    Hyperplane a = unoriented(), b = o.unoriented();
    return a.normal == b.normal && a.offset == b.offset;
  }

  friend bool operator==(const Hyperplane& a, const Hyperplane& b) {
    return a.normal == b.normal && a.offset == b.offset;
  }
  friend bool operator<(const Hyperplane& a, const Hyperplane& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  }
};

// Hyperplane through dim affinely independent points of E^dim, oriented so
// side(negative_ref) < 0. nullopt when the points are affinely dependent or
// the reference lies on the plane.
inline std::optional<Hyperplane> plane_through(const Mat& pts,
                                               const Point& negative_ref) {
  size_t dim = negative_ref.size();
  if (pts.size() != dim) return std::nullopt;
  Mat diffs;
  for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(vec_sub(pts[i], pts[0]));
  if (diffs.empty()) diffs.push_back(Vec(dim, Rational(0)));
  Mat ns = nullspace(diffs);
  if (ns.size() != 1) return std::nullopt;
  Hyperplane h{ns[0], dot(ns[0], pts[0])};
  int s = h.side(negative_ref);
  if (s == 0) return std::nullopt;
  if (s > 0) {
    for (auto& x : h.normal) x = -x;
    h.offset = -h.offset;
  }
  h.canonicalize();
  return h;
}

// Orientation of dim+1 points in E^dim: sign of det of the difference rows.
inline int orient(const Mat& pts) {
  Mat rows;
  for (size_t i = 1; i < pts.size(); ++i)
    rows.push_back(vec_sub(pts[i], pts[0]));
  return det_sign(rows);
}

// Affine coordinate frame for the span of a point set. Maps between ambient
// coordinates and intrinsic coordinates of the affine hull, and exposes the
// orthogonal complement of the direction space.
class AffineFrame {
 public:
  // basis_ids: indices into pts of the chosen origin + direction endpoints.
  static AffineFrame build(const Mat& pts) {
    AffineFrame f;
    if (pts.empty()) throw std::invalid_argument("frame: no points");
    f.ambient_ = pts[0].size();
    f.origin_ = pts[0];
    f.basis_ids_.push_back(0);
    Mat red;  // echelon copy of accepted dirs
    for (size_t i = 1; i < pts.size(); ++i) {
      Vec d = vec_sub(pts[i], f.origin_);
      Mat trial = red;
      trial.push_back(d);
      if (row_echelon(trial).size() > f.dirs_.size()) {
        f.dirs_.push_back(d);
        f.basis_ids_.push_back(i);
        red = std::move(trial);
      }
      if (f.dirs_.size() == f.ambient_) break;
    }
    f.finish();
    return f;
  }

  size_t ambient_dim() const { return ambient_; }
  size_t dim() const { return dirs_.size(); }  // intrinsic dimension
  const Point& origin() const { return origin_; }
  const Mat& dirs() const { return dirs_; }
  const std::vector<size_t>& basis_ids() const { return basis_ids_; }

  // Intrinsic coordinates of q; nullopt when q is outside the affine hull.
  std::optional<Vec> to_intrinsic(const Point& q) const {
    Vec diff = vec_sub(q, origin_);
    Vec rhs(dim());
    for (size_t i = 0; i < dim(); ++i) rhs[i] = diff[pivot_cols_[i]];
    Vec lambda(dim(), Rational(0));
    for (size_t i = 0; i < dim(); ++i) lambda[i] = dot(pivot_inv_[i], rhs);
    // Verify against all ambient coordinates (detects q outside the hull).
    for (size_t c = 0; c < ambient_; ++c) {
      Rational acc;
      for (size_t i = 0; i < dim(); ++i) acc += lambda[i] * dirs_[i][c];
      if (acc != diff[c]) return std::nullopt;
    }
    return lambda;
  }

  Point to_ambient(const Vec& lambda) const {
    Point p = origin_;
    for (size_t i = 0; i < dim(); ++i)
      for (size_t c = 0; c < ambient_; ++c) p[c] += lambda[i] * dirs_[i][c];
    return p;
  }

  // Ambient normal w in the direction span such that for points of the hull,
  // w . (x - origin) equals nu . intrinsic(x). Turns intrinsic facet
  // supports into ambient supports.
  Vec normal_to_ambient(const Vec& nu) const {
    Vec g(dim());
    for (size_t i = 0; i < dim(); ++i) g[i] = dot(gram_inv_[i], nu);
    Vec w(ambient_, Rational(0));
    for (size_t i = 0; i < dim(); ++i)
      for (size_t c = 0; c < ambient_; ++c) w[c] += g[i] * dirs_[i][c];
    return w;
  }

  // Basis of the orthogonal complement of the direction span.
  Mat orthocomplement() const {
    if (dirs_.empty()) {
      Mat id(ambient_, Vec(ambient_, Rational(0)));
      for (size_t i = 0; i < ambient_; ++i) id[i][i] = Rational(1);
      return id;
    }
    return nullspace(dirs_);
  }

 private:
  void finish() {
    size_t k = dirs_.size();
    if (k == 0) return;
    // Pivot columns: k ambient coordinates where the dirs are invertible.
    Mat red = dirs_;
    pivot_cols_ = row_echelon(red);
    Mat sq(k, Vec(k));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) sq[i][j] = dirs_[i][pivot_cols_[j]];
    // lambda = inv(sq^T) * diff[pivots]; store rows of inv(sq^T) = cols of
    // inv(sq).
    auto inv = invert(transpose(sq));
    if (!inv) throw std::logic_error("frame: pivot block singular");
    pivot_inv_ = *inv;
    Mat gram(k, Vec(k));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) gram[i][j] = dot(dirs_[i], dirs_[j]);
    auto ginv = invert(gram);
    if (!ginv) throw std::logic_error("frame: gram singular");
    gram_inv_ = *ginv;
  }

  size_t ambient_ = 0;
  Point origin_;
  Mat dirs_;
  std::vector<size_t> basis_ids_;
  std::vector<size_t> pivot_cols_;
  Mat pivot_inv_;
  Mat gram_inv_;
};

}  // namespace lifthull
