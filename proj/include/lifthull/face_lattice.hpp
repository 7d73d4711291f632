#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "lifthull/bitset.hpp"
#include "lifthull/geometry.hpp"

namespace lifthull {

struct Face {
  uint64_t id = 0;
  int dim = -1;
  std::vector<int> vertices;           // sorted lattice vertex ids
  std::vector<uint64_t> subfaces;      // ids, dimension dim-1
  std::vector<uint64_t> superfaces;    // ids, dimension dim+1
  std::vector<int> facets_containing;  // facet list positions, sorted
  std::optional<Hyperplane> support;   // facets only, ambient, outward

  const Vec& outward_normal() const {
    if (!support) throw std::logic_error("face carries no hyperplane");
    return support->normal;
  }
};

// f_vector()[i] is f_{i-1}; h index k is h_k.
using FVector = std::vector<long long>;
using HVector = std::vector<long long>;

// Complete incidence structure of a polytope, dimensions -1..intrinsic_dim.
// faces are sorted by (dim, vertex ids); vertex ids are ranks in the
// ambient-coordinate lexicographic order, so equal point sets produce
// byte-identical lattices regardless of construction order.
struct FaceLattice {
  size_t ambient_dim = 0;
  int intrinsic_dim = -1;
  std::vector<Point> vertex_coords;   // by lattice vertex id
  std::vector<int> vertex_input_ids;  // first input index realizing each vertex
  std::vector<Face> faces;
  std::unordered_map<uint64_t, size_t> face_index;
  std::vector<size_t> facet_positions;  // faces of dim intrinsic_dim-1
  Mat span_complement;  // orthogonal complement of the affine hull directions

  size_t n_vertices() const { return vertex_coords.size(); }

  const Face& face(uint64_t id) const {
    auto it = face_index.find(id);
    if (it == face_index.end()) throw std::invalid_argument("unknown face id");
    return faces[it->second];
  }

  const Face& top() const { return faces.back(); }

  std::vector<size_t> faces_of_dim(int d) const {
    std::vector<size_t> out;
    for (size_t i = 0; i < faces.size(); ++i)
      if (faces[i].dim == d) out.push_back(i);
    return out;
  }

  std::optional<uint64_t> face_by_vertices(std::vector<int> verts) const {
    std::sort(verts.begin(), verts.end());
    uint64_t id = fnv1a64(verts);
    auto it = face_index.find(id);
    if (it == face_index.end()) return std::nullopt;
    if (faces[it->second].vertices != verts) return std::nullopt;
    return id;
  }
};

inline FVector f_vector(const FaceLattice& l) {
  FVector f(size_t(l.intrinsic_dim) + 2, 0);
  for (const auto& fc : l.faces) f[size_t(fc.dim + 1)] += 1;
  return f;
}

inline bool is_simplicial(const FaceLattice& l) {
  for (const auto& fc : l.faces)
    if (fc.dim >= 0 && fc.dim < l.intrinsic_dim &&
        fc.vertices.size() != size_t(fc.dim) + 1)
      return false;
  return true;
}

inline long long binom_ll(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Int b = binomial((unsigned long)n, (unsigned long)k);
  if (!b.fits_slong_p()) throw std::overflow_error("binomial overflow");
  return b.get_si();
}

// h_k = sum_{i=0..k} (-1)^{k-i} C(dim-i, dim-k) f_{i-1}; f[i] holds f_{i-1}.
inline HVector h_vector(const FVector& f, int dim) {
  HVector h(size_t(dim) + 1, 0);
  for (int k = 0; k <= dim; ++k) {
    long long acc = 0;
    for (int i = 0; i <= k; ++i) {
      long long c = binom_ll(dim - i, dim - k);
      acc += ((k - i) % 2 == 0 ? c : -c) * f[size_t(i)];
    }
    h[size_t(k)] = acc;
  }
  return h;
}

inline HVector h_vector_checked(const FaceLattice& l) {
  if (!is_simplicial(l))
    throw std::invalid_argument("h_vector: lattice is not simplicial");
  return h_vector(f_vector(l), l.intrinsic_dim);
}

inline bool dehn_sommerville_check(const HVector& h) {
  size_t dim = h.size() - 1;
  for (size_t k = 0; k <= dim; ++k)
    if (h[k] != h[dim - k]) return false;
  return true;
}

// Inverts the h-vector. Upper half via the alternate Dehn-Sommerville form
// f_{k-1} = sum*_{i=0}^{dim/2} [C(dim-i, k-i) + C(i, k-dim+i)] h_i for
// floor(dim/2) <= k <= dim, last term halved iff dim is even; lower half by
// triangular inversion of the defining sums. Returns f_{-1}..f_{dim}.
inline FVector reconstruct_f_from_h(const HVector& h) {
  int dim = int(h.size()) - 1;
  FVector f(size_t(dim) + 2, 0);
  int half = dim / 2;
  for (int k = half; k <= dim; ++k) {
    long long acc2 = 0;  // doubled to keep the halving exact
    for (int i = 0; i <= half; ++i) {
      long long coef = binom_ll(dim - i, k - i) + binom_ll(i, k - dim + i);
      long long w = (dim % 2 == 0 && i == half) ? 1 : 2;
      acc2 += w * coef * h[size_t(i)];
    }
    if (acc2 % 2 != 0)
      throw std::invalid_argument("reconstruct_f_from_h: non-integral result");
    f[size_t(k)] = acc2 / 2;
  }
  // Triangular inversion: the i=k coefficient in the defining sum is 1.
  for (int k = 0; k < half; ++k) {
    long long acc = h[size_t(k)];
    for (int i = 0; i < k; ++i) {
      long long c = binom_ll(dim - i, dim - k);
      acc -= ((k - i) % 2 == 0 ? c : -c) * f[size_t(i)];
    }
    f[size_t(k)] = acc;
  }
  f[size_t(dim) + 1] = 1;
  return f;
}

inline bool euler_check(const FaceLattice& l) {
  FVector f = f_vector(l);
  long long acc = 0;
  for (size_t i = 0; i < f.size(); ++i) acc += (i % 2 == 0 ? -f[i] : f[i]);
  return acc == 0;  // sum over k=-1..dim of (-1)^k f_k
}

// Every length-2 interval has exactly 2 intermediate faces. O(F^2)-ish;
// meant for test-sized lattices.
inline bool diamond_check(const FaceLattice& l) {
  std::map<std::pair<uint64_t, uint64_t>, int> between;
  for (const auto& c : l.faces)
    for (uint64_t a : c.subfaces)
      for (uint64_t b : c.superfaces) between[{a, b}] += 1;
  for (const auto& [k, cnt] : between)
    if (cnt != 2) return false;
  // Also catch empty intervals: every (A, B) with A.verts subset of B.verts
  // and dim gap 2 must have appeared.
  for (const auto& b : l.faces) {
    if (b.dim < 1) continue;
    for (const auto& a : l.faces) {
      if (a.dim != b.dim - 2) continue;
      if (!std::includes(b.vertices.begin(), b.vertices.end(),
                         a.vertices.begin(), a.vertices.end()))
        continue;
      if (between.find({a.id, b.id}) == between.end()) return false;
    }
  }
  return true;
}

inline std::string lattice_dump(const FaceLattice& l) {
  std::ostringstream os;
  for (const auto& fc : l.faces) {
    os << fc.dim << ";";
    for (size_t i = 0; i < fc.vertices.size(); ++i)
      os << (i ? "," : " ") << fc.vertices[i];
    os << "\n";
  }
  return os.str();
}

// Rebuilds a combinatorial lattice (no coordinates) from a dump. Incidence
// is recovered by subset tests between consecutive dimensions.
inline FaceLattice parse_lattice_dump(const std::string& text) {
  FaceLattice l;
  std::istringstream is(text);
  std::string line;
  int max_vertex = -1;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    size_t semi = line.find(';');
    if (semi == std::string::npos)
      throw std::invalid_argument("lattice dump: missing ';'");
    Face fc;
    fc.dim = std::stoi(line.substr(0, semi));
    std::string rest = line.substr(semi + 1);
    for (auto& ch : rest)
      if (ch == ',') ch = ' ';
    std::istringstream rs(rest);
    int v;
    while (rs >> v) {
      fc.vertices.push_back(v);
      max_vertex = std::max(max_vertex, v);
    }
    std::sort(fc.vertices.begin(), fc.vertices.end());
    fc.id = fnv1a64(fc.vertices);
    l.intrinsic_dim = std::max(l.intrinsic_dim, fc.dim);
    l.faces.push_back(std::move(fc));
  }
  std::sort(l.faces.begin(), l.faces.end(), [](const Face& a, const Face& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.vertices < b.vertices;
  });
  for (size_t i = 0; i < l.faces.size(); ++i) l.face_index[l.faces[i].id] = i;
  l.vertex_coords.resize(size_t(max_vertex) + 1);
  for (auto& a : l.faces) {
    for (auto& b : l.faces) {
      if (b.dim != a.dim + 1) continue;
      if (std::includes(b.vertices.begin(), b.vertices.end(),
                        a.vertices.begin(), a.vertices.end())) {
        a.superfaces.push_back(b.id);
        b.subfaces.push_back(a.id);
      }
    }
  }
  for (size_t i = 0; i < l.faces.size(); ++i)
    if (l.faces[i].dim == l.intrinsic_dim - 1) l.facet_positions.push_back(i);
  return l;
}

// Combinatorial isomorphism by brute-force vertex bijection, pruned by
// per-vertex incidence profiles. Intended for small test lattices; lattices
// over the same coordinates compare by dump equality instead.
inline bool lattices_isomorphic(const FaceLattice& a, const FaceLattice& b) {
  if (a.intrinsic_dim != b.intrinsic_dim) return false;
  if (a.n_vertices() != b.n_vertices()) return false;
  if (f_vector(a) != f_vector(b)) return false;
  size_t n = a.n_vertices();
  auto profile = [](const FaceLattice& l) {
    std::vector<std::map<int, int>> prof(l.n_vertices());
    for (const auto& fc : l.faces)
      for (int v : fc.vertices) prof[size_t(v)][fc.dim] += 1;
    return prof;
  };
  auto pa = profile(a), pb = profile(b);
  auto face_set = [](const FaceLattice& l) {
    std::vector<std::vector<int>> fs;
    for (const auto& fc : l.faces) fs.push_back(fc.vertices);
    std::sort(fs.begin(), fs.end());
    return fs;
  };
  auto fb = face_set(b);
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  auto feasible = [&](auto&& self, size_t v) -> bool {
    if (v == n) {
      std::vector<std::vector<int>> mapped;
      for (const auto& fc : a.faces) {
        std::vector<int> m;
        for (int x : fc.vertices) m.push_back(perm[size_t(x)]);
        std::sort(m.begin(), m.end());
        mapped.push_back(std::move(m));
      }
      std::sort(mapped.begin(), mapped.end());
      return mapped == fb;
    }
    for (size_t w = 0; w < n; ++w) {
      if (used[w] || pa[v] != pb[w]) continue;
      perm[v] = int(w);
      used[w] = true;
      if (self(self, v + 1)) return true;
      used[w] = false;
      perm[v] = -1;
    }
    return false;
  };
  return feasible(feasible, 0);
}

}  // namespace lifthull
