#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lifthull/apex.hpp"
#include "lifthull/perturb.hpp"
#include "lifthull/polar.hpp"
#include "lifthull/sweep.hpp"

using namespace lifthull;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

Mat sorted_coords(const FaceLattice& l) {
  Mat m = l.vertex_coords;
  std::sort(m.begin(), m.end());
  return m;
}

long long circ_count(const CircularityReport& r, int c) {
  auto it = r.counts.find(c);
  return it == r.counts.end() ? 0 : it->second;
}

// 1. Hulls of n rational moment-curve points in E^4 have exactly n(n-3)/2
// facets for n = 6..12.
bool crit_cyclic(std::string& detail) {
  for (long n = 6; n <= 12; ++n) {
    SplitMix64 rng = SplitMix64::stream(101, uint64_t(n));
    FVector fv = f_vector(hull(cyclic_instance(n, 4, rng)));
    long long want = n * (n - 3) / 2;
    if (fv[4] != want) {
      std::ostringstream os;
      os << "n=" << n << " facets=" << fv[4] << " expected=" << want;
      detail = os.str();
      return false;
    }
  }
  detail = "facets = n(n-3)/2 exactly for n = 6..12";
  return true;
}

// 2. Fixed sphere configurations reproduce hand-counted circularity vectors.
bool crit_sphere_truths(std::string& detail) {
  auto run = [](SphereSet ss) { return sphere_hull_faces(ss).report; };
  auto want = [&](const CircularityReport& r, long long a, long long b,
                  long long c) {
    return circ_count(r, 0) == a && circ_count(r, 1) == b &&
           circ_count(r, 2) == c;
  };
  SphereSet disjoint{3, {{{q(0), q(0), q(0)}, q(1)}, {{q(10), q(0), q(0)}, q(2)}}};
  SphereSet nested{3, {{{q(0), q(0), q(0)}, q(1)}, {{q(0), q(0), q(0)}, q(3)}}};
  SphereSet points{3,
                   {{{q(0), q(0), q(0)}, q(0)},
                    {{q(1), q(0), q(0)}, q(0)},
                    {{q(0), q(1), q(0)}, q(0)},
                    {{q(0), q(0), q(1)}, q(0)}}};
  if (!want(run(disjoint), 0, 1, 2)) {
    detail = "disjoint distinct radii != (0,1,2)";
    return false;
  }
  if (!want(run(nested), 0, 0, 1)) {
    detail = "nested concentric != (0,0,1)";
    return false;
  }
  if (!want(run(points), 4, 6, 4)) {
    detail = "zero-radius simplex != (4,6,4)";
    return false;
  }
  detail = "(0,1,2), (0,0,1), (4,6,4) exact";
  return true;
}

// 3. Section route vs pairwise oracle: isomorphic lattices with identical
// vertex coordinates over 50 seeds x lambda in {1/2, 1/3}.  Both hulls
// number vertices in coordinate-lex order, so equal coordinate sets plus
// equal dumps is exactly "isomorphic with identical coordinates".
bool crit_minkowski(std::string& detail) {
  int runs = 0;
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    SplitMix64 rng = SplitMix64::stream(303, seed);
    WeightedSumSpec ws;
    ws.P = random_rational_points(rng, 4 + rng.bounded(7), 3);
    ws.Q = random_rational_points(rng, 4 + rng.bounded(7), 3);
    for (long den : {2, 3}) {
      ws.lambda = q(1, den);
      FaceLattice a = weighted_minkowski(ws);
      FaceLattice b = minkowski_oracle(ws);
      if (sorted_coords(a) != sorted_coords(b) ||
          lattice_dump(a) != lattice_dump(b)) {
        std::ostringstream os;
        os << "seed " << seed << " lambda 1/" << den << " mismatch";
        detail = os.str();
        return false;
      }
      ++runs;
    }
  }
  std::ostringstream os;
  os << runs << "/100 runs isomorphic with identical coordinates";
  detail = os.str();
  return true;
}

// 4. Apex-augmentation face-count identity, exact integers.
bool crit_apex(std::string& detail) {
  auto holds = [](const LayeredPointSet& lp) {
    return apex_augment(lp, stacked_hull(lp)).report.holds;
  };
  LayeredPointSet cube{2,
                       {{q(0), {{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}, {q(1), q(1)}}},
                        {q(1), {{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}, {q(1), q(1)}}}}};
  LayeredPointSet prism{2,
                        {{q(0), {{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}}},
                         {q(1), {{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}}}}};
  if (!holds(cube)) {
    detail = "identity fails on the cube";
    return false;
  }
  if (!holds(prism)) {
    detail = "identity fails on the triangular prism";
    return false;
  }
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    SplitMix64 rng = SplitMix64::stream(404, seed);
    std::vector<long> tuple{long(3 + rng.bounded(6)), long(3 + rng.bounded(6))};
    LayeredPointSet lp =
        make_layerwise_simplicial(stacked_random_instance(tuple, 3, rng));
    if (!holds(lp)) {
      std::ostringstream os;
      os << "identity fails on seeded stack " << seed;
      detail = os.str();
      return false;
    }
  }
  detail = "exact identity on cube, triangular prism, 25 seeded stacks";
  return true;
}

// 5. Dehn-Sommerville symmetry and f-reconstruction on 100 seeded simplicial
// hulls in E^3..E^5 with at most 40 vertices.
bool crit_dehn_sommerville(std::string& detail) {
  int done = 0;
  for (uint64_t seed = 1; seed <= 2000 && done < 100; ++seed) {
    SplitMix64 rng = SplitMix64::stream(505, seed);
    size_t d = 3 + seed % 3;
    size_t cap = d == 3 ? 34 : d == 4 ? 18 : 10;
    Mat pts = random_rational_points(rng, d + 2 + rng.bounded(cap), d);
    FaceLattice l = hull(pts);
    if (l.intrinsic_dim != int(d) || !is_simplicial(l)) continue;
    HVector h = h_vector_checked(l);
    if (!dehn_sommerville_check(h) || reconstruct_f_from_h(h) != f_vector(l)) {
      std::ostringstream os;
      os << "violated at seed " << seed << " (d=" << d << ")";
      detail = os.str();
      return false;
    }
    ++done;
  }
  if (done < 100) {
    detail = "could not assemble 100 simplicial hulls";
    return false;
  }
  detail = "h symmetry and exact f reconstruction on 100 hulls";
  return true;
}

// 6. Crossing k-faces at the last gap never exceed the exact signature sum.
bool crit_crossing_bound(std::string& detail) {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    SplitMix64 rng = SplitMix64::stream(606, seed);
    size_t m = 2 + seed % 2;
    std::vector<long> tuple;
    for (size_t j = 0; j < m; ++j) tuple.push_back(long(3 + rng.bounded(5)));
    LayeredPointSet lp = stacked_random_instance(tuple, 4, rng);
    FaceLattice l = stacked_hull(lp);
    std::vector<uint64_t> crossing = crossing_faces(l, lp, m - 1);
    for (long k = 1; k <= 4; ++k) {
      long measured = 0;
      for (uint64_t id : crossing)
        if (l.face(id).dim == int(k)) ++measured;
      Int bound = fbound_formula(k, tuple);
      if (Int(measured) > bound) {
        std::ostringstream os;
        os << "seed " << seed << " k=" << k << " measured=" << measured
           << " bound=" << bound.get_str();
        detail = os.str();
        return false;
      }
    }
  }
  detail = "crossing counts within the exact bound, 25 stacks, k = 1..4";
  return true;
}

// 7. Pulling never drops f_k (k >= 1), keeps the vertex count, and the
// layerwise-simplicial pass leaves every face off the extreme layers a
// simplex.
bool crit_pulling(std::string& detail) {
  // Constrained pulls use the hyperplane of an intermediate layer (never a
  // supporting hyperplane); unconstrained pulls act on any hull vertex.
  int done = 0;
  for (uint64_t s = 0; s < 500 && done < 50; ++s) {
    SplitMix64 rng = SplitMix64::stream(707, s);
    bool constrained = done % 2 == 0;
    long d = 3 + long((done / 2) % 2);
    size_t m = constrained ? 3 : 2;
    std::vector<long> tuple;
    for (size_t j = 0; j < m; ++j) tuple.push_back(d + long(rng.bounded(4)));
    LayeredPointSet lp = stacked_random_instance(tuple, d, rng);
    FaceLattice l = stacked_hull(lp);
    if (l.intrinsic_dim != int(l.ambient_dim)) continue;
    int v = -1;
    std::optional<Hyperplane> constraint;
    if (constrained) {
      std::vector<int> mid;
      for (size_t i = 0; i < l.n_vertices(); ++i)
        if (l.vertex_coords[i].back() == q(1)) mid.push_back(int(i));
      if (mid.empty()) continue;
      v = mid[rng.bounded(mid.size())];
      Vec nrm(l.ambient_dim, q(0));
      nrm.back() = q(1);
      constraint = Hyperplane{nrm, q(1)};
    } else {
      v = int(rng.bounded(l.n_vertices()));
    }
    PullResult res = pull_vertex(l, v, constraint);
    if (res.lattice.n_vertices() != l.n_vertices()) {
      detail = "pull changed the vertex count";
      return false;
    }
    FVector before = f_vector(l), after = f_vector(res.lattice);
    for (size_t k = 2; k < before.size(); ++k)
      if (after[k] < before[k]) {
        std::ostringstream os;
        os << "pull " << done << " dropped f_" << (k - 1) << " from "
           << before[k] << " to " << after[k];
        detail = os.str();
        return false;
      }
    ++done;
  }
  if (done < 50) {
    detail = "could not assemble 50 pulls";
    return false;
  }
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    SplitMix64 rng = SplitMix64::stream(708, seed);
    size_t m = 2 + seed % 2;
    long d = 3 + long(seed % 2);
    std::vector<long> tuple;
    for (size_t j = 0; j < m; ++j) tuple.push_back(d + long(rng.bounded(4)));
    LayeredPointSet lp =
        make_layerwise_simplicial(stacked_random_instance(tuple, d, rng));
    FaceLattice l = stacked_hull(lp);
    Rational bottom = lp.layers.front().height, top = lp.layers.back().height;
    for (const Face& f : l.faces) {
      if (f.dim < 1 || f.dim == l.intrinsic_dim) continue;
      bool all_bottom = true, all_top = true;
      for (int v : f.vertices) {
        const Rational& h = l.vertex_coords[size_t(v)].back();
        all_bottom = all_bottom && h == bottom;
        all_top = all_top && h == top;
      }
      if (all_bottom || all_top) continue;
      if (f.vertices.size() != size_t(f.dim) + 1) {
        std::ostringstream os;
        os << "non-simplex off the extreme layers, seed " << seed;
        detail = os.str();
        return false;
      }
    }
  }
  detail = "50 pulls monotone, layerwise-simplicial faces are simplices";
  return true;
}

// 8. lb2 growth: fitted slope of log(total faces) vs log(n1) within
// 2.0 +/- 0.25 over n1 = n2 in {8,16,32,64}, and per instance the
// circularity-2 count must reach n2 x (# vertical prism facets inside Y+).
// The second clause counts one face per sphere in this lattice (a cap is a
// single lifted vertex), so it is reported honestly as measured.
bool crit_lb2_growth(std::string& detail) {
  std::vector<long> sizes{8, 16, 32, 64};
  std::vector<SweepRow> rows;
  std::ostringstream per;
  bool clause2 = true;
  for (size_t i = 0; i < sizes.size(); ++i) {
    long n = sizes[i];
    SplitMix64 rng = SplitMix64::stream(1, i);
    LowerBoundInstance inst = lb2_instance(3, n, n, rng.next());
    SphereHullResult res = sphere_hull_faces(inst.spheres);

    Mat centers;
    size_t prism_count = size_t(2 * (n + 1));
    for (size_t s = 0; s < prism_count; ++s)
      centers.push_back(inst.spheres.spheres[s].center);
    FaceLattice prism = hull(centers);
    long yplus = 0;
    for (size_t pos : prism.facet_positions) {
      const Face& f = prism.faces[pos];
      bool at_z1 = true, at_z2 = true, positive = true;
      for (int v : f.vertices) {
        const Point& p = prism.vertex_coords[size_t(v)];
        at_z1 = at_z1 && p.back() == inst.z1;
        at_z2 = at_z2 && p.back() == inst.z2;
        positive = positive && p[0].sign() > 0;
      }
      if (!at_z1 && !at_z2 && positive) ++yplus;
    }
    long long measured = circ_count(res.report, 2);
    long long required = n * yplus;
    clause2 = clause2 && measured >= required;
    per << (i ? " " : "") << measured << "/" << required << "@" << n;

    SweepRow row;
    row.family = "lb2";
    row.d = 3;
    row.n = {n, n};
    row.total_faces = res.report.total();
    rows.push_back(row);
  }
  double slope = fit_rows(rows, SweepFamily::LB2, 3).slope;
  bool clause1 = slope >= 1.75 && slope <= 2.25;
  std::ostringstream os;
  os << "slope=" << slope << (clause1 ? " in" : " outside")
     << " [1.75,2.25]; circ2 measured/required: " << per.str();
  detail = os.str();
  return clause1 && clause2;
}

// 9. Direction probes across every sphere instance generated here return
// only faces the Gauss classifier marked PASS.
bool crit_probe_soundness(std::string& detail) {
  std::vector<SphereSet> suite;
  suite.push_back(
      {3, {{{q(0), q(0), q(0)}, q(1)}, {{q(10), q(0), q(0)}, q(2)}}});
  suite.push_back({3, {{{q(0), q(0), q(0)}, q(1)}, {{q(0), q(0), q(0)}, q(3)}}});
  suite.push_back({3,
                   {{{q(0), q(0), q(0)}, q(0)},
                    {{q(1), q(0), q(0)}, q(0)},
                    {{q(0), q(1), q(0)}, q(0)},
                    {{q(0), q(0), q(1)}, q(0)}}});
  suite.push_back(lb2_instance(3, 4, 1, 21).spheres);
  suite.push_back(lb2_instance(3, 8, 2, 22).spheres);
  suite.push_back(lb2_instance(3, 8, 8, 23).spheres);
  suite.push_back(lbm_instance(3, {2, 2, 2}, 24).spheres);
  suite.push_back(lbm_instance(3, {3, 2, 2}, 25).spheres);

  long long probes = 0;
  for (size_t idx = 0; idx < suite.size(); ++idx) {
    SphereHullResult res = sphere_hull_faces(suite[idx]);
    std::set<uint64_t> pass;
    for (const auto& [c, ids] : res.report.witnesses)
      pass.insert(ids.begin(), ids.end());
    SplitMix64 rng = SplitMix64::stream(909, idx);
    for (int i = 0; i < 1250; ++i) {
      uint64_t id =
          direction_probe(res.lattice, rational_unit_vector(3, rng));
      ++probes;
      if (!pass.count(id)) {
        std::ostringstream os;
        os << "probe hit a non-PASS face on instance " << idx;
        detail = os.str();
        return false;
      }
    }
  }
  std::ostringstream os;
  os << probes << " probes over " << suite.size()
     << " instances, zero false positives";
  detail = os.str();
  return true;
}

// 10. The polar dual about the vertex centroid is an involution up to
// lattice isomorphism on 20 seeded full-dimensional hulls.
bool crit_duality(std::string& detail) {
  int done = 0;
  for (uint64_t seed = 1; seed <= 200 && done < 20; ++seed) {
    SplitMix64 rng = SplitMix64::stream(1010, seed);
    size_t d = 3 + seed % 3;
    size_t n = d + 2 + rng.bounded(d == 3 ? 8 : d == 4 ? 6 : 4);
    FaceLattice l = hull(random_rational_points(rng, n, d));
    if (l.intrinsic_dim != int(d)) continue;
    Point c(d, q(0));
    for (const auto& p : l.vertex_coords)
      for (size_t j = 0; j < d; ++j) c[j] += p[j];
    for (size_t j = 0; j < d; ++j)
      c[j] = c[j] / Rational(long(l.n_vertices()));
    FaceLattice dd = polar_dual(polar_dual(l, c), c);
    if (!lattices_isomorphic(dd, l)) {
      std::ostringstream os;
      os << "double dual differs at seed " << seed << " (d=" << d << ")";
      detail = os.str();
      return false;
    }
    ++done;
  }
  if (done < 20) {
    detail = "could not assemble 20 full-dimensional hulls";
    return false;
  }
  detail = "double dual isomorphic on 20 hulls in E^3..E^5";
  return true;
}

struct Criterion {
  const char* name;
  bool (*run)(std::string&);
  double limit_sec;  // 0 = no explicit wall-clock gate
};

const Criterion kCriteria[] = {
    {"cyclic facet count", crit_cyclic, 10},
    {"sphere-hull ground truths", crit_sphere_truths, 1},
    {"minkowski equivalence", crit_minkowski, 60},
    {"apex-augmentation identity", crit_apex, 60},
    {"dehn-sommerville", crit_dehn_sommerville, 120},
    {"crossing-face bound", crit_crossing_bound, 0},
    {"pulling monotonicity", crit_pulling, 0},
    {"lower-bound growth", crit_lb2_growth, 300},
    {"oracle soundness", crit_probe_soundness, 0},
    {"duality involution", crit_duality, 0},
};

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance <criterion 1..10>\n";
    return 2;
  }
  int c = std::atoi(argv[1]);
  if (c < 1 || c > 10) {
    std::cerr << "usage: acceptance <criterion 1..10>\n";
    return 2;
  }
  const Criterion& crit = kCriteria[c - 1];
  std::string detail;
  bool ok = false;
  auto t0 = std::chrono::steady_clock::now();
  try {
    ok = crit.run(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
    ok = false;
  }
  double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (ok && crit.limit_sec > 0 && dt > crit.limit_sec) {
    ok = false;
    std::ostringstream os;
    os << detail << "; exceeded " << crit.limit_sec << "s budget";
    detail = os.str();
  }
  std::printf("criterion %d %s %s: %s (%.1fs)\n", c, ok ? "PASS" : "FAIL",
              crit.name, detail.c_str(), dt);
  return ok ? 0 : 1;
}
