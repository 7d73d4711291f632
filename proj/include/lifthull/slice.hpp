#pragma once

#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "lifthull/hull.hpp"

namespace lifthull {

// Cross-section of a hull with a hyperplane cutting its (relative) interior.
// Every face of the section lattice is tagged with the id of the unique face
// of the input lattice whose intersection with the plane generates it.
struct SliceResult {
  FaceLattice lattice;
  std::unordered_map<uint64_t, uint64_t> generated_by;  // section -> input id
};

inline SliceResult slice(const FaceLattice& l, const Hyperplane& plane) {
  if (plane.normal.size() != l.ambient_dim)
    throw std::invalid_argument("slice: plane dimension mismatch");
  std::vector<int> side(l.n_vertices());
  bool any_pos = false, any_neg = false;
  for (size_t v = 0; v < l.n_vertices(); ++v) {
    side[v] = plane.side(l.vertex_coords[v]);
    any_pos = any_pos || side[v] > 0;
    any_neg = any_neg || side[v] < 0;
  }
  if (!any_pos || !any_neg)
    throw std::invalid_argument("slice: plane misses the hull interior");

  // Section points: vertices on the plane, plus transversal edge crossings.
  Mat pts;
  std::vector<uint64_t> generator;  // input face id per section point
  for (size_t v = 0; v < l.n_vertices(); ++v)
    if (side[v] == 0) {
      pts.push_back(l.vertex_coords[v]);
      generator.push_back(fnv1a64({int(v)}));
    }
  for (size_t pos : l.faces_of_dim(1)) {
    const Face& e = l.faces[pos];
    int u = e.vertices[0], w = e.vertices[1];
    if (side[size_t(u)] * side[size_t(w)] >= 0) continue;
    const Point& pu = l.vertex_coords[size_t(u)];
    const Point& pw = l.vertex_coords[size_t(w)];
    Rational du = plane.eval(pu), dw = plane.eval(pw);
    Rational t = du / (du - dw);  // in (0,1) by strict opposite signs
    Point x(l.ambient_dim);
    for (size_t j = 0; j < l.ambient_dim; ++j)
      x[j] = pu[j] + t * (pw[j] - pu[j]);
    pts.push_back(std::move(x));
    generator.push_back(e.id);
  }

  SliceResult res;
  res.lattice = hull(pts);
  if (res.lattice.n_vertices() != pts.size())
    throw std::logic_error("slice: section point was not extreme");

  // Facet-set index over the input lattice: a proper face is the unique face
  // lying in exactly its set of facets; the top face owns the empty set.
  std::map<std::vector<int>, uint64_t> face_of_facet_set;
  for (const Face& f : l.faces) face_of_facet_set[f.facets_containing] = f.id;

  for (const Face& f : res.lattice.faces) {
    if (f.dim < 0) continue;
    std::vector<int> common;
    bool first = true;
    for (int v : f.vertices) {
      uint64_t gid = generator[size_t(res.lattice.vertex_input_ids[size_t(v)])];
      const Face& g = l.face(gid);
      if (first) {
        common = g.facets_containing;
        first = false;
      } else {
        std::vector<int> inter;
        std::set_intersection(common.begin(), common.end(),
                              g.facets_containing.begin(),
                              g.facets_containing.end(),
                              std::back_inserter(inter));
        common = std::move(inter);
      }
    }
    auto it = face_of_facet_set.find(common);
    if (it == face_of_facet_set.end())
      throw std::logic_error("slice: generator join not a face");
    res.generated_by[f.id] = it->second;
  }
  return res;
}

}  // namespace lifthull
