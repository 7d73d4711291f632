#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "lifthull/face_lattice.hpp"

namespace lifthull {

// Polar dual about an interior center: the facet with plane n.x = b maps to
// the pole center + n/(b - n.center), faces reverse (k-face <-> (d-1-k)-face)
// with incidence flipped. Pole coordinates are exact, so taking the dual of
// the dual about the same center reproduces the original vertex coordinates.
inline FaceLattice polar_dual(const FaceLattice& l, const Point& center) {
  size_t d = l.ambient_dim;
  if (l.intrinsic_dim != int(d))
    throw std::invalid_argument("polar_dual: hull not full-dimensional");
  if (center.size() != d)
    throw std::invalid_argument("polar_dual: center dimension mismatch");

  size_t nf = l.facet_positions.size();
  std::vector<Point> pole(nf);
  for (size_t ord = 0; ord < nf; ++ord) {
    const Face& f = l.faces[l.facet_positions[ord]];
    const Hyperplane& h = *f.support;
    Rational gap = h.offset - dot(h.normal, center);
    if (gap.sign() <= 0)
      throw std::invalid_argument("polar_dual: center not strictly interior");
    Point q(d);
    for (size_t j = 0; j < d; ++j) q[j] = center[j] + h.normal[j] / gap;
    pole[ord] = std::move(q);
  }

  // Dual vertex ids: coordinate-lex over the poles, matching hull() output.
  std::vector<size_t> by_coord(nf);
  for (size_t i = 0; i < nf; ++i) by_coord[i] = i;
  std::sort(by_coord.begin(), by_coord.end(),
            [&](size_t a, size_t b) { return pole[a] < pole[b]; });
  std::vector<int> dv_of_ord(nf);
  FaceLattice out;
  out.ambient_dim = d;
  out.intrinsic_dim = int(d);
  for (size_t v = 0; v < nf; ++v) {
    dv_of_ord[by_coord[v]] = int(v);
    out.vertex_coords.push_back(pole[by_coord[v]]);
    out.vertex_input_ids.push_back(int(by_coord[v]));
  }

  // One dual face per primal face; primal top becomes the dual empty face.
  struct Rec {
    size_t primal_pos;
    int dim;
    std::vector<int> verts;
    uint64_t id;
  };
  std::vector<Rec> recs(l.faces.size());
  std::vector<uint64_t> dual_id_of(l.faces.size());
  for (size_t i = 0; i < l.faces.size(); ++i) {
    Rec r;
    r.primal_pos = i;
    r.dim = int(d) - 1 - l.faces[i].dim;
    for (int ord : l.faces[i].facets_containing)
      r.verts.push_back(dv_of_ord[size_t(ord)]);
    std::sort(r.verts.begin(), r.verts.end());
    r.id = fnv1a64(r.verts);
    dual_id_of[i] = r.id;
    recs[i] = std::move(r);
  }
  std::sort(recs.begin(), recs.end(), [](const Rec& a, const Rec& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.verts < b.verts;
  });

  for (const Rec& r : recs) {
    Face f;
    f.id = r.id;
    f.dim = r.dim;
    f.vertices = r.verts;
    const Face& src = l.faces[r.primal_pos];
    for (uint64_t sup : src.superfaces)
      f.subfaces.push_back(dual_id_of[l.face_index.at(sup)]);
    for (uint64_t sub : src.subfaces)
      f.superfaces.push_back(dual_id_of[l.face_index.at(sub)]);
    out.faces.push_back(std::move(f));
  }
  for (size_t i = 0; i < out.faces.size(); ++i) {
    if (!out.face_index.try_emplace(out.faces[i].id, i).second)
      throw std::logic_error("polar_dual: dual face id collision");
    if (out.faces[i].dim == int(d) - 1) out.facet_positions.push_back(i);
  }
  for (Face& f : out.faces) {
    auto tidy = [&](std::vector<uint64_t>& v) {
      std::sort(v.begin(), v.end(), [&](uint64_t a, uint64_t b) {
        return out.face_index.at(a) < out.face_index.at(b);
      });
    };
    tidy(f.subfaces);
    tidy(f.superfaces);
  }

  // Dual facets come from primal vertices: supporting plane (v-c).(x-c) = 1.
  std::vector<int> dual_facet_ordinal_of_primal_vertex(l.n_vertices(), -1);
  for (size_t ord = 0; ord < out.facet_positions.size(); ++ord) {
    const Rec* src = nullptr;
    for (const Rec& r : recs)
      if (r.id == out.faces[out.facet_positions[ord]].id) {
        src = &r;
        break;
      }
    const Face& pv = l.faces[src->primal_pos];
    if (pv.dim != 0) throw std::logic_error("polar_dual: facet not a vertex");
    int v = pv.vertices[0];
    dual_facet_ordinal_of_primal_vertex[size_t(v)] = int(ord);
    Vec n = vec_sub(l.vertex_coords[size_t(v)], center);
    Hyperplane h{n, Rational(1) + dot(n, center)};
    h.canonicalize();
    out.faces[out.facet_positions[ord]].support = h;
  }
  for (const Rec& r : recs) {
    Face& f = out.faces[out.face_index.at(r.id)];
    for (int v : l.faces[r.primal_pos].vertices)
      f.facets_containing.push_back(
          dual_facet_ordinal_of_primal_vertex[size_t(v)]);
    std::sort(f.facets_containing.begin(), f.facets_containing.end());
  }

  if (!euler_check(out)) throw std::logic_error("polar_dual: Euler failed");
  return out;
}

}  // namespace lifthull
