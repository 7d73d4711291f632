#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "lifthull/layers.hpp"
#include "lifthull/lp.hpp"

namespace lifthull {

// Exact bookkeeping for the two-apex augmentation.  For k = 0..d (d the
// layer dimension) the identity reads
//   f_k(Q) = f_k(P) + f_{k-1}(bd P_1) + f_{k-1}(bd P_m) - a_k,
// with f_{-1}(bd .) = 1, a_d = 2 and a_k = 0 below.  It holds exactly
// whenever both apexes are placed (each sees exactly its extreme facet).
struct ApexIdentityReport {
  Point apex_below, apex_above;
  std::vector<long long> actual;    // f_k(Q), k = 0..d
  std::vector<long long> expected;  // right-hand side per k
  bool holds = false;
};

struct ApexResult {
  FaceLattice lattice;  // Q
  ApexIdentityReport report;
};

namespace detail {

// Ordinal (into facet_positions) of the facet lying in the given layer
// hyperplane, if any.
inline std::optional<size_t> facet_in_plane(const FaceLattice& l,
                                            const Hyperplane& plane) {
  Hyperplane want = plane;
  want.canonicalize();
  Hyperplane flip{vec_scale(Rational(-1), plane.normal), -plane.offset};
  flip.canonicalize();
  for (size_t i = 0; i < l.facet_positions.size(); ++i) {
    Hyperplane h = *l.faces[l.facet_positions[i]].support;
    h.canonicalize();
    if (h == want || h == flip) return i;
  }
  return std::nullopt;
}

// Strictly beyond facet `ordinal`, strictly beneath every other facet.
inline Point place_apex(const FaceLattice& l, size_t ordinal) {
  std::vector<Hyperplane> sys;
  for (size_t i = 0; i < l.facet_positions.size(); ++i) {
    const Hyperplane& h = *l.faces[l.facet_positions[i]].support;
    if (i == ordinal)
      sys.push_back(h);
    else
      sys.push_back({vec_scale(Rational(-1), h.normal), -h.offset});
  }
  auto p = lp_interior_point(sys);
  if (!p) throw std::logic_error("apex_augment: placement LP infeasible");
  return *p;
}

}  // namespace detail

// Adds one point below the bottom layer seeing exactly the bottom facet and
// one above the top layer seeing exactly the top facet, hulls the union, and
// reports the face-count identity.
inline ApexResult apex_augment(const LayeredPointSet& lp,
                               const FaceLattice& l) {
  if (lp.layers.size() < 2)
    throw std::invalid_argument("apex_augment: need >= 2 layers");
  size_t dim = lp.dim + 1;
  if (l.ambient_dim != dim || l.intrinsic_dim != int(dim))
    throw std::invalid_argument(
        "apex_augment: stacked hull is not full-dimensional");

  auto layer_plane = [&](size_t i) {
    Vec n(dim, Rational(0));
    n.back() = Rational(1);
    return Hyperplane{std::move(n), lp.layers[i].height};
  };
  auto bottom = detail::facet_in_plane(l, layer_plane(0));
  auto top = detail::facet_in_plane(l, layer_plane(lp.layers.size() - 1));
  if (!bottom || !top)
    throw std::invalid_argument("apex_augment: extreme layer is not a facet");

  ApexResult out;
  out.report.apex_below = detail::place_apex(l, *bottom);
  out.report.apex_above = detail::place_apex(l, *top);

  Mat pts = l.vertex_coords;
  pts.push_back(out.report.apex_below);
  pts.push_back(out.report.apex_above);
  out.lattice = hull(pts);

  // f_{k-1} of the boundary complex of extreme facet `ordinal`; the empty
  // face lies in every facet, giving f_{-1} = 1.
  auto boundary_count = [&](size_t ordinal, int dim_wanted) {
    long long c = 0;
    for (const Face& f : l.faces)
      if (f.dim == dim_wanted &&
          std::binary_search(f.facets_containing.begin(),
                             f.facets_containing.end(), int(ordinal)))
        ++c;
    return c;
  };

  FVector fP = f_vector(l), fQ = f_vector(out.lattice);
  long d = long(lp.dim);
  out.report.holds = true;
  for (long k = 0; k <= d; ++k) {
    long long rhs = fP[size_t(k) + 1] + boundary_count(*bottom, int(k) - 1) +
                    boundary_count(*top, int(k) - 1) - (k == d ? 2 : 0);
    long long lhs = fQ[size_t(k) + 1];
    out.report.actual.push_back(lhs);
    out.report.expected.push_back(rhs);
    out.report.holds = out.report.holds && lhs == rhs;
  }
  return out;
}

}  // namespace lifthull
