#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lifthull/hull.hpp"

namespace lifthull {

struct Layer {
  Rational height;
  Mat points;  // each of dimension LayeredPointSet::dim
};

// Point sets on parallel hyperplanes, ordered bottom to top.
struct LayeredPointSet {
  size_t dim = 0;  // intrinsic layer dimension
  std::vector<Layer> layers;

  size_t total_points() const {
    size_t n = 0;
    for (const auto& l : layers) n += l.points.size();
    return n;
  }
};

inline void validate(const LayeredPointSet& lp) {
  if (lp.layers.empty())
    throw std::invalid_argument("layered set: need at least one layer");
  for (size_t i = 0; i + 1 < lp.layers.size(); ++i)
    if (!(lp.layers[i].height < lp.layers[i + 1].height))
      throw std::invalid_argument("layered set: heights must increase");
  for (const auto& l : lp.layers)
    for (const auto& p : l.points)
      if (p.size() != lp.dim)
        throw std::invalid_argument("layered set: point dimension mismatch");
}

// Embeds layer i's points as (p, height_i) in one dimension higher.
inline Mat stack(const LayeredPointSet& lp) {
  validate(lp);
  Mat out;
  for (const auto& l : lp.layers)
    for (const auto& p : l.points) {
      Point q = p;
      q.push_back(l.height);
      out.push_back(std::move(q));
    }
  return out;
}

// Hull of the stacked embedding.  A single layer (or otherwise flat input)
// yields intrinsic_dim <= dim; callers read the flag off the lattice.
inline FaceLattice stacked_hull(const LayeredPointSet& lp) {
  return hull(stack(lp));
}

// Index of the layer whose height matches the point's last coordinate.
inline size_t layer_of_point(const Point& p, const LayeredPointSet& lp) {
  for (size_t i = 0; i < lp.layers.size(); ++i)
    if (p.back() == lp.layers[i].height) return i;
  throw std::invalid_argument("layered set: height matches no layer");
}

using LayerSignature = std::vector<int>;  // vertices of a face per layer

inline LayerSignature layer_signature(const Face& f, const FaceLattice& l,
                                      const LayeredPointSet& lp) {
  LayerSignature a(lp.layers.size(), 0);
  for (int v : f.vertices)
    a[layer_of_point(l.vertex_coords[size_t(v)], lp)] += 1;
  return a;
}

// Proper faces meeting any hyperplane strictly between layers g and g+1
// (1-based): exactly those with a vertex at layer > g and another at <= g.
inline std::vector<uint64_t> crossing_faces(const FaceLattice& l,
                                            const LayeredPointSet& lp,
                                            size_t g) {
  if (g < 1 || g >= lp.layers.size())
    throw std::invalid_argument("crossing_faces: gap index out of range");
  std::vector<uint64_t> out;
  for (const Face& f : l.faces) {
    if (f.dim < 0 || f.dim == l.intrinsic_dim) continue;
    bool below = false, above = false;
    for (int v : f.vertices) {
      size_t li = layer_of_point(l.vertex_coords[size_t(v)], lp);
      below = below || li < g;
      above = above || li >= g;
    }
    if (below && above) out.push_back(f.id);
  }
  return out;
}

// Text format: "d m", then per layer a "height n_i" line and n_i point rows.
inline void write_layered(std::ostream& os, const LayeredPointSet& lp) {
  os << lp.dim << ' ' << lp.layers.size() << '\n';
  for (const auto& l : lp.layers) {
    os << l.height.str() << ' ' << l.points.size() << '\n';
    for (const auto& p : l.points) {
      for (size_t j = 0; j < p.size(); ++j)
        os << (j ? " " : "") << p[j].str();
      os << '\n';
    }
  }
}

inline LayeredPointSet read_layered(std::istream& is) {
  LayeredPointSet lp;
  size_t m = 0;
  if (!(is >> lp.dim >> m))
    throw std::invalid_argument("layered set: bad header");
  lp.layers.resize(m);
  for (auto& l : lp.layers) {
    std::string h;
    size_t n = 0;
    if (!(is >> h >> n))
      throw std::invalid_argument("layered set: bad layer header");
    l.height = Rational::parse(h);
    l.points.assign(n, Point(lp.dim));
    for (auto& p : l.points)
      for (auto& c : p) {
        std::string tok;
        if (!(is >> tok))
          throw std::invalid_argument("layered set: truncated point row");
        c = Rational::parse(tok);
      }
  }
  validate(lp);
  return lp;
}

inline std::string layered_dump(const LayeredPointSet& lp) {
  std::ostringstream os;
  write_layered(os, lp);
  return os.str();
}

inline LayeredPointSet parse_layered(const std::string& text) {
  std::istringstream is(text);
  return read_layered(is);
}

}  // namespace lifthull
