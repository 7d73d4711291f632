#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lifthull/layers.hpp"
#include "lifthull/qp.hpp"
#include "lifthull/rng.hpp"

namespace lifthull {

struct Sphere {
  Point center;
  Rational radius;
};

struct SphereSet {
  size_t dim = 0;
  std::vector<Sphere> spheres;

  // Sorted distinct radii; every sphere belongs to exactly one class.
  std::vector<Rational> radii_classes() const {
    std::vector<Rational> r;
    for (const auto& s : spheres) r.push_back(s.radius);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
  }

  std::vector<long> class_counts() const {
    std::vector<Rational> classes = radii_classes();
    std::vector<long> n(classes.size(), 0);
    for (const auto& s : spheres)
      n[size_t(std::lower_bound(classes.begin(), classes.end(), s.radius) -
               classes.begin())] += 1;
    return n;
  }
};

// Lifted configuration: one layer per radius class at height = radius.
// vertex_mask flags, per layer point, membership in the layer polytope's
// vertex set; non-vertex centers can never touch a supporting hyperplane.
struct LiftResult {
  LayeredPointSet layered;                    // all centers, grouped
  std::vector<std::vector<char>> vertex_mask;  // parallel to layered points

  LayeredPointSet reduced() const {
    LayeredPointSet out;
    out.dim = layered.dim;
    for (size_t i = 0; i < layered.layers.size(); ++i) {
      Layer l;
      l.height = layered.layers[i].height;
      for (size_t j = 0; j < layered.layers[i].points.size(); ++j)
        if (vertex_mask[i][j]) l.points.push_back(layered.layers[i].points[j]);
      out.layers.push_back(std::move(l));
    }
    return out;
  }
};

inline LiftResult lift(const SphereSet& ss) {
  LiftResult out;
  out.layered.dim = ss.dim;
  std::vector<Rational> classes = ss.radii_classes();
  for (const Rational& rho : classes) {
    Layer l;
    l.height = rho;
    for (const auto& s : ss.spheres)
      if (s.radius == rho) l.points.push_back(s.center);
    out.layered.layers.push_back(std::move(l));
  }
  for (const auto& l : out.layered.layers) {
    std::vector<char> mask(l.points.size(), 0);
    if (!l.points.empty()) {
      FaceLattice h = hull(l.points);
      std::map<Point, int> extreme;
      for (const auto& v : h.vertex_coords) extreme.emplace(v, 1);
      for (size_t j = 0; j < l.points.size(); ++j)
        mask[j] = extreme.count(l.points[j]) ? 1 : 0;
    }
    out.vertex_mask.push_back(std::move(mask));
  }
  return out;
}

// Outward facet normals through a face split as (u, t), u horizontal and t
// the lift coordinate, plus a basis of the orthogonal complement when the
// lifted hull is flat (the cone then has that lineality).
struct NormalConeGenerators {
  uint64_t face_id = 0;
  Mat u;                    // horizontal components, one row per generator
  std::vector<Rational> t;  // lift components
  Mat lineality_basis;      // ambient vectors, empty for full-dim hulls
};

inline NormalConeGenerators normal_cone_generators(const FaceLattice& l,
                                                   const Face& f) {
  NormalConeGenerators g;
  g.face_id = f.id;
  auto push = [&](const Vec& n) {
    g.u.emplace_back(n.begin(), n.end() - 1);
    g.t.push_back(n.back());
  };
  for (int ordinal : f.facets_containing)
    push(l.faces[l.facet_positions[size_t(ordinal)]].outward_normal());
  for (const Vec& b : l.span_complement) {
    g.lineality_basis.push_back(b);
    push(b);
    push(vec_scale(Rational(-1), b));
  }
  return g;
}

enum class GaussResult { PASS, FAIL, DEGENERATE };

namespace detail {

// Sign of t - ||u||, decided exactly through squares.
inline int lorentz_sign(const Vec& u, const Rational& t) {
  if (t.sign() < 0) return -1;
  Rational uu = dot(u, u), tt = t * t;
  if (tt > uu) return 1;
  return tt == uu ? 0 : -1;
}

// Inertia (positive, negative, zero) of a symmetric rational matrix, by
// congruence reduction.
inline std::array<int, 3> symmetric_inertia(Mat m) {
  int pos = 0, neg = 0, zero = 0;
  size_t n = m.size();
  std::vector<char> done(n, 0);
  for (size_t round = 0; round < n; ++round) {
    size_t p = n;
    for (size_t i = 0; i < n && p == n; ++i)
      if (!done[i] && !m[i][i].is_zero()) p = i;
    if (p == n) {
      // No diagonal pivot; manufacture one from an off-diagonal entry.
      size_t a = n, b = n;
      for (size_t i = 0; i < n && a == n; ++i)
        for (size_t j = i + 1; j < n && a == n; ++j)
          if (!done[i] && !done[j] && !m[i][j].is_zero()) {
            a = i;
            b = j;
          }
      if (a == n) {
        for (size_t i = 0; i < n; ++i)
          if (!done[i]) ++zero;
        break;
      }
      for (size_t j = 0; j < n; ++j) m[a][j] += m[b][j];
      for (size_t i = 0; i < n; ++i) m[i][a] += m[i][b];
      p = a;
    }
    Rational piv = m[p][p];
    (piv.sign() > 0 ? pos : neg) += 1;
    for (size_t i = 0; i < n; ++i) {
      if (i == p || done[i] || m[i][p].is_zero()) continue;
      Rational c = m[i][p] / piv;
      for (size_t j = 0; j < n; ++j) m[i][j] -= c * m[p][j];
      for (size_t j = 0; j < n; ++j) m[j][i] -= c * m[j][p];
    }
    done[p] = 1;
  }
  return {pos, neg, zero};
}

}  // namespace detail

// Does the relative interior of the face's normal cone meet the upper
// Lorentz boundary {t = ||u|| > 0}?  With at least one facet normal the cone
// is pointed-plus-lineality, so zero is off the relative interior and a
// strict sign witness on each side certifies an interior tangency; exact
// boundary contact without the strict pair is surfaced as DEGENERATE.  A
// face with no facet normal (top face of a flat hull) has a linear subspace
// for its cone, decided by the inertia of the Lorentz form restricted to it.
inline GaussResult gauss_membership(const Face& f, const FaceLattice& l,
                                    const NormalConeGenerators& g) {
  (void)l;
  if (g.u.empty()) throw std::invalid_argument("gauss: empty normal cone");
  if (g.t.size() != g.u.size()) throw std::invalid_argument("gauss: shape");

  if (f.facets_containing.empty()) {
    const Mat& b = g.lineality_basis;
    Mat m(b.size(), Vec(b.size()));
    for (size_t r = 0; r < b.size(); ++r)
      for (size_t c = 0; c < b.size(); ++c) {
        Vec ur(b[r].begin(), b[r].end() - 1), uc(b[c].begin(), b[c].end() - 1);
        m[r][c] = b[r].back() * b[c].back() - dot(ur, uc);
      }
    auto [pos, neg, zero] = detail::symmetric_inertia(m);
    if (pos >= 1 && neg >= 1) return GaussResult::PASS;
    if (pos == 0 && zero >= 1) return GaussResult::DEGENERATE;
    return GaussResult::FAIL;
  }

  bool strict_b = false, contact = false, strict_a = false, exact_a = false;
  for (size_t j = 0; j < g.u.size(); ++j) {
    int s = detail::lorentz_sign(g.u[j], g.t[j]);
    strict_b = strict_b || s < 0;
    contact = contact || s == 0;
    strict_a = strict_a || s > 0;
  }
  if (!strict_b && !contact) return GaussResult::FAIL;  // all strictly inside
  if (!strict_a) {
    if (auto qp = min_norm_qp(g.u, g.t)) {
      if (qp->min_sq < Rational(1)) strict_a = true;
      if (qp->min_sq == Rational(1)) exact_a = true;
    }
  }
  if (strict_b && strict_a) return GaussResult::PASS;
  if (contact || exact_a) return GaussResult::DEGENERATE;
  return GaussResult::FAIL;
}

// Faces of the sphere hull stratified by circularity: a PASSing l-face of
// the lifted hull carries one sphere-hull face of circularity d-1-l.
struct CircularityReport {
  size_t dim = 0;  // ambient d
  std::map<int, long long> counts;
  std::map<int, std::vector<uint64_t>> witnesses;
  std::vector<uint64_t> degenerate;

  long long total() const {
    long long s = 0;
    for (const auto& [c, k] : counts) s += k;
    return s;
  }
};

struct SphereHullResult {
  LiftResult lifted;
  FaceLattice lattice;  // hull of the reduced lift
  CircularityReport report;
};

inline SphereHullResult sphere_hull_faces(const SphereSet& ss) {
  if (ss.spheres.empty())
    throw std::invalid_argument("sphere_hull_faces: no spheres");
  SphereHullResult out;
  out.lifted = lift(ss);
  out.lattice = stacked_hull(out.lifted.reduced());
  out.report.dim = ss.dim;
  const FaceLattice& l = out.lattice;
  bool full = l.intrinsic_dim == int(l.ambient_dim);
  for (const Face& f : l.faces) {
    if (f.dim < 0) continue;
    if (full && f.dim == l.intrinsic_dim) continue;
    NormalConeGenerators g = normal_cone_generators(l, f);
    GaussResult r = gauss_membership(f, l, g);
    if (r == GaussResult::DEGENERATE) {
      out.report.degenerate.push_back(f.id);
      continue;
    }
    if (r != GaussResult::PASS) continue;
    int circ = int(ss.dim) - 1 - f.dim;
    if (circ < 0)
      throw std::logic_error("sphere hull: facet-level face passed");
    out.report.counts[circ] += 1;
    out.report.witnesses[circ].push_back(f.id);
  }
  return out;
}

// Argmax face of the lifted hull for the lifted direction (u, ||u||); the
// direction must have rational length so all comparisons stay exact.
namespace detail {

inline std::optional<Rational> exact_sqrt(const Rational& x) {
  if (x.sign() < 0) return std::nullopt;
  Int n = x.num(), d = x.den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return std::nullopt;
  Int rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(rn) / Rational(rd);
}

}  // namespace detail

inline uint64_t direction_probe(const FaceLattice& lifted, const Vec& u) {
  if (is_zero_vec(u)) throw std::invalid_argument("probe: zero direction");
  auto t = detail::exact_sqrt(dot(u, u));
  if (!t)
    throw std::invalid_argument("probe: direction needs rational length");
  Vec n = u;
  n.push_back(*t);
  std::optional<Rational> best;
  std::vector<int> argmax;
  for (size_t i = 0; i < lifted.n_vertices(); ++i) {
    Rational s = dot(n, lifted.vertex_coords[i]);
    if (!best || s > *best) {
      best = s;
      argmax.assign(1, int(i));
    } else if (s == *best) {
      argmax.push_back(int(i));
    }
  }
  auto id = lifted.face_by_vertices(argmax);
  if (!id) throw std::logic_error("probe: argmax set is not a face");
  return *id;
}

// Exact rational point on the unit sphere in E^d via the inverse
// stereographic map of a small random rational vector.
inline Vec rational_unit_vector(size_t d, SplitMix64& rng) {
  if (d == 0) throw std::invalid_argument("unit vector: dimension zero");
  if (d == 1) return {Rational(rng.bounded(2) ? 1 : -1)};
  Vec y(d - 1);
  for (auto& c : y)
    c = Rational(long(rng.bounded(41)) - 20, 1 + long(rng.bounded(20)));
  Rational yy = dot(y, y);
  Vec u(d);
  Rational den = yy + Rational(1);
  for (size_t j = 0; j + 1 < d; ++j) u[j] = Rational(2) * y[j] / den;
  u[d - 1] = (yy - Rational(1)) / den;
  return u;
}

// Text format: "d n" then n rows "c_1 ... c_d r".
inline void write_spheres(std::ostream& os, const SphereSet& ss) {
  os << ss.dim << ' ' << ss.spheres.size() << '\n';
  for (const auto& s : ss.spheres) {
    for (const auto& c : s.center) os << c.str() << ' ';
    os << s.radius.str() << '\n';
  }
}

inline SphereSet read_spheres(std::istream& is) {
  SphereSet ss;
  size_t n = 0;
  if (!(is >> ss.dim >> n))
    throw std::invalid_argument("sphere set: bad header");
  ss.spheres.resize(n);
  for (auto& s : ss.spheres) {
    s.center.resize(ss.dim);
    std::string tok;
    for (auto& c : s.center) {
      if (!(is >> tok)) throw std::invalid_argument("sphere set: truncated");
      c = Rational::parse(tok);
    }
    if (!(is >> tok)) throw std::invalid_argument("sphere set: truncated");
    s.radius = Rational::parse(tok);
    if (s.radius.sign() < 0)
      throw std::invalid_argument("sphere set: negative radius");
  }
  return ss;
}

inline std::string report_csv(const CircularityReport& r) {
  std::ostringstream os;
  os << "circularity,count\n";
  for (int c = 0; c < int(r.dim); ++c) {
    auto it = r.counts.find(c);
    os << c << ',' << (it == r.counts.end() ? 0 : it->second) << '\n';
  }
  return os.str();
}

}  // namespace lifthull
