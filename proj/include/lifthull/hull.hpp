#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lifthull/face_lattice.hpp"
#include "lifthull/geometry.hpp"
#include "lifthull/rng.hpp"

namespace lifthull {

// Facets of the hull of a full-dimensional point set in intrinsic
// coordinates. Coplanar facets are merged: one record per supporting
// hyperplane, on_sets list every input point lying on it.
struct FacetEnumeration {
  size_t dim = 0;
  std::vector<Hyperplane> planes;         // outward, canonical integer form
  std::vector<std::vector<int>> on_sets;  // sorted point indices
};

namespace detail {

// Incremental beneath-beyond with merged coplanar facets. A simplicial
// scaffold (cells) triangulates each merged facet and carries the ridge
// adjacency used for horizon walks; facet identity is the exact supporting
// hyperplane.
class MergedHull {
 public:
  MergedHull(const Mat& pts, const std::vector<int>& simplex) : pts_(pts) {
    k_ = pts[0].size();
    interior_.assign(k_, Rational(0));
    for (int id : simplex) interior_ = vec_add(interior_, pts[size_t(id)]);
    for (auto& c : interior_) c /= Rational(long(simplex.size()));
    // One cell per omitted simplex vertex; all cells pairwise adjacent.
    for (size_t i = 0; i < simplex.size(); ++i) {
      Cell c;
      for (size_t t = 0; t < simplex.size(); ++t)
        if (t != i) c.v.push_back(simplex[t]);
      std::sort(c.v.begin(), c.v.end());
      Mat face_pts;
      for (int id : c.v) face_pts.push_back(pts[size_t(id)]);
      auto pl = plane_through(face_pts, interior_);
      if (!pl) throw std::logic_error("hull: degenerate seed simplex");
      FacetRec f;
      f.plane = *pl;
      f.cells = {int(cells_.size())};
      f.on = c.v;
      f.alive = true;
      c.facet = int(facets_.size());
      c.alive = true;
      c.nb.assign(c.v.size(), -1);
      cells_.push_back(std::move(c));
      facets_.push_back(std::move(f));
    }
    for (size_t i = 0; i < cells_.size(); ++i) {
      Cell& c = cells_[i];
      for (size_t s = 0; s < c.v.size(); ++s) {
        // Neighbor across the ridge omitting c.v[s] is the cell whose
        // omitted seed vertex is c.v[s].
        for (size_t t = 0; t < simplex.size(); ++t)
          if (simplex[t] == c.v[s]) c.nb[s] = int(t);
      }
    }
  }

  void insert(int p) {
    const Point& x = pts_[size_t(p)];
    std::vector<int> sign(facets_.size(), -2);
    bool any_pos = false;
    for (size_t f = 0; f < facets_.size(); ++f) {
      if (!facets_[f].alive) continue;
      sign[f] = facets_[f].plane.side(x);
      any_pos = any_pos || sign[f] > 0;
    }
    if (!any_pos) return;  // p inside the current hull (possibly on it)

    // p joins every facet whose hyperplane contains it.
    for (size_t f = 0; f < facets_.size(); ++f)
      if (facets_[f].alive && sign[f] == 0) facets_[f].on.push_back(p);

    std::vector<int> dying;
    for (size_t c = 0; c < cells_.size(); ++c)
      if (cells_[c].alive && sign[size_t(cells_[c].facet)] > 0)
        dying.push_back(int(c));

    std::map<Hyperplane, int> fresh;                    // plane -> facet
    std::map<std::vector<int>, std::pair<int, int>> pending;  // p-ridges
    for (int ci : dying) {
      const std::vector<int> cv = cells_[size_t(ci)].v;
      const std::vector<int> cnb = cells_[size_t(ci)].nb;
      for (size_t s = 0; s < cv.size(); ++s) {
        int ni = cnb[s];
        int nsign = sign[size_t(cells_[size_t(ni)].facet)];
        if (nsign > 0) continue;  // interior ridge of the visible region
        // Horizon ridge: cone a new cell from p over it.
        std::vector<int> ridge;
        for (size_t t = 0; t < cv.size(); ++t)
          if (t != s) ridge.push_back(cv[t]);
        Cell t;
        t.v = ridge;
        t.v.push_back(p);
        std::sort(t.v.begin(), t.v.end());
        t.nb.assign(t.v.size(), -1);
        t.alive = true;
        int fi;
        if (nsign == 0) {
          fi = cells_[size_t(ni)].facet;  // facet grows in its own plane
        } else {
          Mat face_pts;
          for (int id : t.v) face_pts.push_back(pts_[size_t(id)]);
          auto pl = plane_through(face_pts, interior_);
          if (!pl) throw std::logic_error("hull: flat horizon cone");
          auto [it, inserted] = fresh.try_emplace(*pl, int(facets_.size()));
          if (inserted) {
            FacetRec f;
            f.plane = *pl;
            f.alive = true;
            facets_.push_back(std::move(f));
            sign.push_back(-2);
          }
          fi = it->second;
        }
        t.facet = fi;
        int ti = int(cells_.size());
        facets_[size_t(fi)].cells.push_back(ti);
        for (int id : t.v) facets_[size_t(fi)].on.push_back(id);
        // Link across the horizon ridge.
        size_t pslot = 0;
        while (t.v[pslot] != p) ++pslot;
        t.nb[pslot] = ni;
        Cell& nc = cells_[size_t(ni)];
        bool relinked = false;
        for (size_t u = 0; u < nc.nb.size(); ++u)
          if (nc.nb[u] == ci) {
            nc.nb[u] = ti;
            relinked = true;
            break;
          }
        if (!relinked) throw std::logic_error("hull: stale neighbor link");
        // Pair up the ridges through p with sibling new cells.
        for (size_t u = 0; u < t.v.size(); ++u) {
          if (u == pslot) continue;
          std::vector<int> key;
          for (size_t w = 0; w < t.v.size(); ++w)
            if (w != u) key.push_back(t.v[w]);
          auto it = pending.find(key);
          if (it == pending.end()) {
            pending.emplace(std::move(key), std::make_pair(ti, int(u)));
          } else {
            auto [oi, os] = it->second;
            t.nb[u] = oi;
            cells_[size_t(oi)].nb[size_t(os)] = ti;
            pending.erase(it);
          }
        }
        cells_.push_back(std::move(t));
      }
    }
    if (!pending.empty()) throw std::logic_error("hull: open horizon");

    for (int ci : dying) cells_[size_t(ci)].alive = false;
    for (size_t f = 0; f < facets_.size(); ++f)
      if (facets_[f].alive && sign[f] > 0) facets_[f].alive = false;
  }

  FacetEnumeration finish() {
    FacetEnumeration fe;
    fe.dim = k_;
    std::map<Hyperplane, int> seen;
    for (auto& f : facets_) {
      if (!f.alive) continue;
      if (!seen.try_emplace(f.plane, 1).second)
        throw std::logic_error("hull: duplicate facet plane");
      std::sort(f.on.begin(), f.on.end());
      f.on.erase(std::unique(f.on.begin(), f.on.end()), f.on.end());
      fe.planes.push_back(f.plane);
      fe.on_sets.push_back(std::move(f.on));
    }
    // Exact sweep: rebuilds on-sets (the incremental sets can miss points
    // that were already non-extreme when a later facet appeared) and verifies
    // nothing lies outside. Incremental sets provably contain every hull
    // vertex, so the jumbo fallback only loses non-vertex on-records.
    if (pts_.size() * fe.planes.size() <= 50000000) {
      for (size_t f = 0; f < fe.planes.size(); ++f) {
        std::vector<int> on;
        for (size_t i = 0; i < pts_.size(); ++i) {
          int s = fe.planes[f].side(pts_[i]);
          if (s > 0) throw std::logic_error("hull: point left outside");
          if (s == 0) on.push_back(int(i));
        }
        fe.on_sets[f] = std::move(on);
      }
    }
    return fe;
  }

 private:
  struct Cell {
    std::vector<int> v;   // sorted point ids, size k
    std::vector<int> nb;  // nb[i]: cell across the ridge omitting v[i]
    int facet = -1;
    bool alive = false;
  };
  struct FacetRec {
    Hyperplane plane;
    std::vector<int> cells;
    std::vector<int> on;
    bool alive = false;
  };

  const Mat& pts_;
  size_t k_ = 0;
  Point interior_;
  std::vector<Cell> cells_;
  std::vector<FacetRec> facets_;
};

}  // namespace detail

// Facets of conv(pts) where pts are full-dimensional intrinsic coordinates
// (dim >= 1), pairwise distinct. seed_simplex: dim+1 affinely independent
// indices; order: the remaining indices, inserted in sequence.
inline FacetEnumeration enumerate_facets(const Mat& pts,
                                         const std::vector<int>& seed_simplex,
                                         const std::vector<int>& order) {
  size_t k = pts[0].size();
  if (k == 1) {
    FacetEnumeration fe;
    fe.dim = 1;
    int lo = 0, hi = 0;
    for (size_t i = 1; i < pts.size(); ++i) {
      if (pts[i][0] < pts[size_t(lo)][0]) lo = int(i);
      if (pts[i][0] > pts[size_t(hi)][0]) hi = int(i);
    }
    fe.planes.push_back(Hyperplane{{Rational(1)}, pts[size_t(hi)][0]});
    fe.planes.push_back(Hyperplane{{Rational(-1)}, -pts[size_t(lo)][0]});
    fe.planes[0].canonicalize();
    fe.planes[1].canonicalize();
    fe.on_sets.push_back({hi});
    fe.on_sets.push_back({lo});
    return fe;
  }
  detail::MergedHull mh(pts, seed_simplex);
  for (int p : order) mh.insert(p);
  return mh.finish();
}

struct HullOptions {
  std::optional<uint64_t> shuffle_seed;  // shuffles insertion order if set
};

namespace detail {

// Vertices of the enumeration: points whose incident facet normals span the
// full intrinsic dimension.
inline std::vector<int> filter_vertices(const FacetEnumeration& fe,
                                        size_t n_pts) {
  std::vector<std::vector<int>> inc(n_pts);
  for (size_t f = 0; f < fe.on_sets.size(); ++f)
    for (int u : fe.on_sets[f]) inc[size_t(u)].push_back(int(f));
  std::vector<int> verts;
  for (size_t u = 0; u < n_pts; ++u) {
    if (inc[u].empty()) continue;
    Mat normals;
    for (int f : inc[u]) normals.push_back(fe.planes[size_t(f)].normal);
    if (rank(normals) == fe.dim) verts.push_back(int(u));
  }
  return verts;
}

struct SubFacets {
  std::vector<std::vector<int>> facet_verts;  // in caller's vertex ids
};

// Facet vertex sets of the polytope spanned by the given (global-id,
// coordinate) vertex list. All inputs are vertices of their own hull.
inline SubFacets enumerate_face_boundary(const std::vector<int>& ids,
                                         const Mat& coords, int expect_dim) {
  AffineFrame frame = AffineFrame::build(coords);
  if (int(frame.dim()) != expect_dim)
    throw std::logic_error("hull: face dimension mismatch");
  Mat lam;
  for (const auto& p : coords) {
    auto l = frame.to_intrinsic(p);
    if (!l) throw std::logic_error("hull: face point off its span");
    lam.push_back(std::move(*l));
  }
  std::vector<int> seed;
  for (size_t b : frame.basis_ids()) seed.push_back(int(b));
  std::vector<bool> in_seed(coords.size(), false);
  for (int s : seed) in_seed[size_t(s)] = true;
  std::vector<int> order;
  for (size_t i = 0; i < coords.size(); ++i)
    if (!in_seed[i]) order.push_back(int(i));
  FacetEnumeration fe = enumerate_facets(lam, seed, order);
  std::vector<int> verts = filter_vertices(fe, coords.size());
  if (verts.size() != coords.size())
    throw std::logic_error("hull: face lost a vertex");
  SubFacets sf;
  for (const auto& on : fe.on_sets) {
    std::vector<int> g;
    for (int u : on) g.push_back(ids[size_t(u)]);
    sf.facet_verts.push_back(std::move(g));
  }
  return sf;
}

}  // namespace detail

// Full face lattice of conv(points). Duplicate points collapse to the first
// occurrence; affinely dependent inputs get intrinsic_dim < ambient_dim with
// the lattice built inside the affine hull. Coplanar groups yield merged
// non-simplicial faces.
inline FaceLattice hull(const Mat& input, const HullOptions& opts = {}) {
  if (input.empty()) throw std::invalid_argument("hull: no points");
  size_t ambient = input[0].size();
  for (const auto& p : input)
    if (p.size() != ambient) throw std::invalid_argument("hull: mixed dims");

  std::map<Point, int> first_seen;
  Mat uniq;
  std::vector<int> uniq_input_id;
  for (size_t i = 0; i < input.size(); ++i) {
    if (first_seen.try_emplace(input[i], int(i)).second) {
      uniq.push_back(input[i]);
      uniq_input_id.push_back(int(i));
    }
  }

  AffineFrame frame = AffineFrame::build(uniq);
  size_t k = frame.dim();

  FaceLattice l;
  l.ambient_dim = ambient;
  l.intrinsic_dim = int(k);
  l.span_complement = frame.orthocomplement();

  if (k == 0) {
    l.vertex_coords = {uniq[0]};
    l.vertex_input_ids = {uniq_input_id[0]};
    Face empty;
    empty.dim = -1;
    empty.id = fnv1a64({});
    Face top;
    top.dim = 0;
    top.vertices = {0};
    top.id = fnv1a64({0});
    empty.superfaces = {top.id};
    top.subfaces = {empty.id};
    l.faces = {empty, top};
    for (size_t i = 0; i < l.faces.size(); ++i)
      l.face_index[l.faces[i].id] = i;
    return l;
  }

  Mat lam;
  for (const auto& p : uniq) {
    auto li = frame.to_intrinsic(p);
    if (!li) throw std::logic_error("hull: point off its own span");
    lam.push_back(std::move(*li));
  }
  std::vector<int> seed;
  for (size_t b : frame.basis_ids()) seed.push_back(int(b));
  std::vector<bool> in_seed(uniq.size(), false);
  for (int s : seed) in_seed[size_t(s)] = true;
  std::vector<int> order;
  for (size_t i = 0; i < uniq.size(); ++i)
    if (!in_seed[i]) order.push_back(int(i));
  if (opts.shuffle_seed) {
    SplitMix64 rng(*opts.shuffle_seed);
    shuffle_in_place(order, rng);
  }
  FacetEnumeration fe = enumerate_facets(lam, seed, order);

  std::vector<int> vert_uniq_ids = detail::filter_vertices(fe, uniq.size());
  // Canonical vertex order: ambient coordinates, lexicographic.
  std::sort(vert_uniq_ids.begin(), vert_uniq_ids.end(),
            [&](int a, int b) { return uniq[size_t(a)] < uniq[size_t(b)]; });
  std::vector<int> vid_of(uniq.size(), -1);
  for (size_t v = 0; v < vert_uniq_ids.size(); ++v) {
    vid_of[size_t(vert_uniq_ids[v])] = int(v);
    l.vertex_coords.push_back(uniq[size_t(vert_uniq_ids[v])]);
    l.vertex_input_ids.push_back(uniq_input_id[size_t(vert_uniq_ids[v])]);
  }
  size_t nv = l.vertex_coords.size();

  // Facet vertex sets and ambient supports.
  std::vector<std::vector<int>> facet_verts;
  std::vector<Hyperplane> facet_planes;
  for (size_t f = 0; f < fe.on_sets.size(); ++f) {
    std::vector<int> verts;
    for (int u : fe.on_sets[f])
      if (vid_of[size_t(u)] >= 0) verts.push_back(vid_of[size_t(u)]);
    std::sort(verts.begin(), verts.end());
    Vec w = frame.normal_to_ambient(fe.planes[f].normal);
    Hyperplane amb{w, dot(w, l.vertex_coords[size_t(verts[0])])};
    amb.canonicalize();
    facet_verts.push_back(std::move(verts));
    facet_planes.push_back(std::move(amb));
  }

  // Face discovery: top-down, one boundary enumeration per distinct face.
  struct Node {
    int dim;
    std::vector<int> verts;
    std::vector<int> children;
    std::vector<int> parents;
  };
  std::vector<Node> nodes;
  std::unordered_map<DynBitset, int, DynBitset::Hash> node_of;
  auto get_node = [&](std::vector<int> verts, int dim) {
    DynBitset key = DynBitset::of(nv, verts);
    auto it = node_of.find(key);
    if (it != node_of.end()) {
      if (nodes[size_t(it->second)].dim != dim)
        throw std::logic_error("hull: face dim conflict");
      return it->second;
    }
    nodes.push_back(Node{dim, std::move(verts), {}, {}});
    node_of.emplace(std::move(key), int(nodes.size()) - 1);
    return int(nodes.size()) - 1;
  };

  std::vector<int> all(nv);
  for (size_t v = 0; v < nv; ++v) all[v] = int(v);
  int top_node = get_node(all, int(k));
  std::deque<int> todo;
  auto link = [&](int parent, int child) {
    nodes[size_t(parent)].children.push_back(child);
    nodes[size_t(child)].parents.push_back(parent);
  };
  for (size_t f = 0; f < facet_verts.size(); ++f) {
    int c = get_node(facet_verts[f], int(k) - 1);
    link(top_node, c);
    todo.push_back(c);
  }
  std::vector<bool> expanded(nodes.size(), false);
  expanded[size_t(top_node)] = true;
  while (!todo.empty()) {
    int ni = todo.front();
    todo.pop_front();
    expanded.resize(nodes.size(), false);
    if (expanded[size_t(ni)]) continue;
    expanded[size_t(ni)] = true;
    int dim = nodes[size_t(ni)].dim;
    if (dim == 0) continue;
    std::vector<int> verts = nodes[size_t(ni)].verts;
    std::vector<std::vector<int>> children;
    if (verts.size() == size_t(dim) + 1) {
      for (size_t omit = 0; omit < verts.size(); ++omit) {
        std::vector<int> c;
        for (size_t t = 0; t < verts.size(); ++t)
          if (t != omit) c.push_back(verts[t]);
        children.push_back(std::move(c));
      }
    } else {
      Mat coords;
      for (int v : verts) coords.push_back(l.vertex_coords[size_t(v)]);
      children =
          detail::enumerate_face_boundary(verts, coords, dim).facet_verts;
    }
    for (auto& c : children) {
      int ci = get_node(std::move(c), dim - 1);
      expanded.resize(nodes.size(), false);
      link(ni, ci);
      if (!expanded[size_t(ci)]) todo.push_back(ci);
    }
  }

  // Assemble sorted face list: empty face first, then nodes.
  std::vector<size_t> order_idx(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) order_idx[i] = i;
  std::sort(order_idx.begin(), order_idx.end(), [&](size_t a, size_t b) {
    if (nodes[a].dim != nodes[b].dim) return nodes[a].dim < nodes[b].dim;
    return nodes[a].verts < nodes[b].verts;
  });
  Face empty;
  empty.dim = -1;
  empty.id = fnv1a64({});
  l.faces.push_back(empty);
  std::vector<uint64_t> node_face_id(nodes.size());
  for (size_t oi : order_idx) {
    Face fc;
    fc.dim = nodes[oi].dim;
    fc.vertices = nodes[oi].verts;
    fc.id = fnv1a64(fc.vertices);
    node_face_id[oi] = fc.id;
    l.faces.push_back(std::move(fc));
  }
  for (size_t i = 0; i < l.faces.size(); ++i) {
    auto [it, fresh_id] = l.face_index.try_emplace(l.faces[i].id, i);
    if (!fresh_id) throw std::logic_error("hull: face id collision");
  }
  for (size_t oi = 0; oi < nodes.size(); ++oi) {
    Face& fc = l.faces[l.face_index[node_face_id[oi]]];
    std::vector<uint64_t> subs, sups;
    for (int c : nodes[oi].children) subs.push_back(node_face_id[size_t(c)]);
    for (int p : nodes[oi].parents) sups.push_back(node_face_id[size_t(p)]);
    auto tidy = [&](std::vector<uint64_t>& v) {
      std::sort(v.begin(), v.end(), [&](uint64_t a, uint64_t b) {
        return l.face_index[a] < l.face_index[b];
      });
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    tidy(subs);
    tidy(sups);
    if (fc.dim == 0) subs = {empty.id};
    fc.subfaces = std::move(subs);
    fc.superfaces = std::move(sups);
  }
  Face& ef = l.faces[0];
  for (const auto& fc : l.faces)
    if (fc.dim == 0) ef.superfaces.push_back(fc.id);

  for (size_t i = 0; i < l.faces.size(); ++i)
    if (l.faces[i].dim == int(k) - 1) l.facet_positions.push_back(i);

  // Attach supports and seed facet ordinals.
  std::vector<std::vector<int>> fc_sets(l.faces.size());
  for (size_t f = 0; f < facet_verts.size(); ++f) {
    uint64_t id = fnv1a64(facet_verts[f]);
    size_t pos = l.face_index.at(id);
    l.faces[pos].support = facet_planes[f];
  }
  for (size_t ord = 0; ord < l.facet_positions.size(); ++ord)
    fc_sets[l.facet_positions[ord]] = {int(ord)};
  // Propagate facet membership downward (faces sorted by dim ascending, so
  // iterate in reverse and pull from superfaces).
  for (size_t i = l.faces.size(); i-- > 0;) {
    Face& fc = l.faces[i];
    if (fc.dim >= int(k) - 1) continue;
    std::vector<int> acc;
    for (uint64_t sup : fc.superfaces) {
      const auto& s = fc_sets[l.face_index.at(sup)];
      acc.insert(acc.end(), s.begin(), s.end());
    }
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    fc_sets[i] = std::move(acc);
  }
  for (size_t i = 0; i < l.faces.size(); ++i)
    l.faces[i].facets_containing = fc_sets[i];

  if (!euler_check(l)) throw std::logic_error("hull: Euler check failed");
  return l;
}

}  // namespace lifthull
