#pragma once

#include <iostream>
#include <optional>
#include <stdexcept>
#include <utility>

#include "lifthull/hull.hpp"
#include "lifthull/layers.hpp"
#include "lifthull/lp.hpp"

namespace lifthull {

enum class BeyondBeneath { BEYOND, BENEATH, ON };

// Side of a facet's supporting hyperplane: BEYOND is the open halfspace away
// from the polytope, BENEATH the open halfspace containing its interior.
inline BeyondBeneath classify(const Point& p, const Face& facet) {
  if (!facet.support) throw std::logic_error("face carries no hyperplane");
  int s = facet.support->side(p);
  if (s > 0) return BeyondBeneath::BEYOND;
  if (s < 0) return BeyondBeneath::BENEATH;
  return BeyondBeneath::ON;
}

struct PullResult {
  Point moved;
  FaceLattice lattice;
};

struct PullInfeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Same point set as a hyperplane, either orientation.
inline bool same_plane(const Hyperplane& a, const Hyperplane& b) {
  Hyperplane ca = a, cb = b, cn = b;
  ca.canonicalize();
  cb.canonicalize();
  cn.normal = vec_scale(Rational(-1), cn.normal);
  cn.offset = -cn.offset;
  cn.canonicalize();
  return ca == cb || ca == cn;
}

constexpr size_t kPullCoordinateBitWarn = 512;

}  // namespace detail

// Moves vertex v strictly beyond every facet containing it (facets lying in
// the constraint hyperplane excepted) and strictly beneath every other facet,
// staying on the constraint hyperplane when one is given.  The hull is
// rebuilt from scratch; vertex count is preserved and no face count f_k with
// k >= 1 can drop.
inline PullResult pull_vertex(const FaceLattice& l, int v,
                              const std::optional<Hyperplane>& constraint =
                                  std::nullopt) {
  if (v < 0 || size_t(v) >= l.n_vertices())
    throw std::invalid_argument("pull_vertex: no such vertex");
  if (l.intrinsic_dim != int(l.ambient_dim))
    throw std::invalid_argument("pull_vertex: hull is not full-dimensional");
  const Point& old = l.vertex_coords[size_t(v)];
  if (constraint && constraint->side(old) != 0)
    throw std::invalid_argument("pull_vertex: vertex is off the constraint");

  std::vector<Hyperplane> sys;
  for (size_t pos : l.facet_positions) {
    const Face& f = l.faces[pos];
    const Hyperplane& h = *f.support;
    bool contains_v =
        std::binary_search(f.vertices.begin(), f.vertices.end(), v);
    if (contains_v) {
      if (constraint && detail::same_plane(h, *constraint)) continue;
      sys.push_back(h);  // demand outward side: beyond
    } else {
      sys.push_back({vec_scale(Rational(-1), h.normal), -h.offset});
    }
  }

  std::optional<Point> found;
  if (!constraint) {
    found = lp_interior_point(sys);
  } else {
    // Substitute x = old + B y with B spanning the constraint directions,
    // solve in the lower dimension, then map the witness back.
    Mat basis = nullspace(Mat{constraint->normal});
    std::vector<Hyperplane> sub;
    for (const auto& h : sys) {
      Vec row(basis.size());
      for (size_t j = 0; j < basis.size(); ++j) row[j] = dot(h.normal, basis[j]);
      sub.push_back({std::move(row), h.offset - dot(h.normal, old)});
    }
    if (auto y = lp_interior_point(sub)) {
      Point x = old;
      for (size_t j = 0; j < basis.size(); ++j)
        x = vec_add(x, vec_scale((*y)[j], basis[j]));
      found = std::move(x);
    }
  }
  if (!found) throw PullInfeasible("pull_vertex: strict system is infeasible");

  for (const auto& c : *found)
    if (c.bit_size() > detail::kPullCoordinateBitWarn) {
      std::cerr << "pull_vertex: coordinate grew past "
                << detail::kPullCoordinateBitWarn << " bits\n";
      break;
    }

  Mat pts = l.vertex_coords;
  pts[size_t(v)] = *found;
  PullResult out{*found, hull(pts)};
  if (out.lattice.n_vertices() != l.n_vertices())
    throw std::logic_error("pull_vertex: vertex count changed");
  FVector before = f_vector(l), after = f_vector(out.lattice);
  for (size_t k = 2; k < before.size(); ++k)
    if (after[k] < before[k])
      throw std::logic_error("pull_vertex: face count dropped");
  return out;
}

// Pulls every hull vertex within its own layer hyperplane: first the bottom
// layer, then the top, then the intermediate layers.  Afterwards every face
// not contained in an extreme layer hyperplane is a simplex, layer membership
// is unchanged, and no f_k with k >= 1 has dropped.  Input points that are
// not vertices of the stacked hull are dropped up front.
inline LayeredPointSet make_layerwise_simplicial(const LayeredPointSet& in) {
  if (in.layers.size() < 2)
    throw std::invalid_argument("make_layerwise_simplicial: need >= 2 layers");
  FaceLattice cur = stacked_hull(in);
  size_t dim = cur.ambient_dim;
  if (cur.intrinsic_dim != int(dim))
    throw std::invalid_argument(
        "make_layerwise_simplicial: stacked hull is not full-dimensional");
  FVector start = f_vector(cur);

  auto layer_of = [&](const Point& p) {
    for (size_t i = 0; i < in.layers.size(); ++i)
      if (p.back() == in.layers[i].height) return i;
    throw std::logic_error("make_layerwise_simplicial: height off any layer");
  };
  auto plane_of = [&](size_t layer) {
    Vec n(dim, Rational(0));
    n.back() = Rational(1);
    return Hyperplane{std::move(n), in.layers[layer].height};
  };

  auto pull_phase = [&](auto keep) {
    Mat targets;
    for (const auto& p : cur.vertex_coords)
      if (keep(layer_of(p))) targets.push_back(p);
    for (const auto& t : targets) {
      int id = -1;
      for (size_t i = 0; i < cur.n_vertices(); ++i)
        if (cur.vertex_coords[i] == t) id = int(i);
      if (id < 0)
        throw std::logic_error("make_layerwise_simplicial: vertex vanished");
      cur = pull_vertex(cur, id, plane_of(layer_of(t))).lattice;
    }
  };
  size_t last = in.layers.size() - 1;
  pull_phase([&](size_t i) { return i == 0; });
  pull_phase([&](size_t i) { return i == last; });
  pull_phase([&](size_t i) { return i != 0 && i != last; });

  FVector end = f_vector(cur);
  for (size_t k = 2; k < start.size(); ++k)
    if (end[k] < start[k])
      throw std::logic_error("make_layerwise_simplicial: face count dropped");
  for (const Face& f : cur.faces) {
    if (f.dim <= 0 || f.dim == cur.intrinsic_dim) continue;
    bool off_extreme = false;
    for (int v : f.vertices) {
      size_t li = layer_of(cur.vertex_coords[size_t(v)]);
      if (li != 0 && li != last) off_extreme = true;
    }
    if (!off_extreme) {
      // All vertices sit in the two extreme hyperplanes; the face is exempt
      // only if it lies inside one of them.
      bool in_bottom = true, in_top = true;
      for (int v : f.vertices) {
        size_t li = layer_of(cur.vertex_coords[size_t(v)]);
        in_bottom = in_bottom && li == 0;
        in_top = in_top && li == last;
      }
      if (in_bottom || in_top) continue;
    }
    if (f.vertices.size() != size_t(f.dim) + 1)
      throw std::logic_error(
          "make_layerwise_simplicial: interior face is not a simplex");
  }

  LayeredPointSet out;
  out.dim = in.dim;
  out.layers.resize(in.layers.size());
  for (size_t i = 0; i < in.layers.size(); ++i)
    out.layers[i].height = in.layers[i].height;
  for (const auto& p : cur.vertex_coords) {
    Point base(p.begin(), p.end() - 1);
    out.layers[layer_of(p)].points.push_back(std::move(base));
  }
  return out;
}

}  // namespace lifthull
