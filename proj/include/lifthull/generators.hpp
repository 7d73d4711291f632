#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lifthull/sphere_hull.hpp"

namespace lifthull {

// Points on the rational trigonometric moment curve
// (cos t, sin t, ..., cos dt, sin dt), parametrized by s = tan(t/2).
struct MomentCurveParams {
  size_t two_delta = 0;          // even target dimension
  std::vector<Rational> s;       // strictly increasing, positive
};

inline Mat moment_curve_points(const MomentCurveParams& mc) {
  if (mc.two_delta == 0 || mc.two_delta % 2 != 0)
    throw std::invalid_argument("moment curve: dimension must be even");
  if (mc.s.empty()) throw std::invalid_argument("moment curve: no parameters");
  for (size_t i = 0; i < mc.s.size(); ++i) {
    if (mc.s[i].sign() <= 0)
      throw std::invalid_argument("moment curve: parameters must be positive");
    if (i && !(mc.s[i - 1] < mc.s[i]))
      throw std::invalid_argument("moment curve: parameters must increase");
  }
  size_t delta = mc.two_delta / 2;
  Mat out;
  for (const Rational& s : mc.s) {
    Rational den = Rational(1) + s * s;
    std::vector<Rational> co{Rational(1), (Rational(1) - s * s) / den};
    std::vector<Rational> si{Rational(0), Rational(2) * s / den};
    for (size_t k = 2; k <= delta; ++k) {
      co.push_back(Rational(2) * co[1] * co[k - 1] - co[k - 2]);
      si.push_back(Rational(2) * co[1] * si[k - 1] - si[k - 2]);
    }
    Vec p;
    for (size_t k = 1; k <= delta; ++k) {
      p.push_back(co[k]);
      p.push_back(si[k]);
    }
    if (dot(p, p) != Rational(long(delta)))
      throw std::logic_error("moment curve: norm invariant broken");
    out.push_back(std::move(p));
  }
  return out;
}

// One exact predicate evaluation: pass iff margin > 0.
struct CheckRecord {
  std::string condition;
  long sphere = -1;    // stack sphere index, -1 for global checks
  uint64_t face = 0;   // prism face id, 0 for global checks
  Rational margin;
  bool pass = false;
};

struct Certificate {
  std::vector<CheckRecord> records;

  bool all_pass() const {
    for (const auto& r : records)
      if (!r.pass) return false;
    return true;
  }
  const CheckRecord* first_failure() const {
    for (const auto& r : records)
      if (!r.pass) return &r;
    return nullptr;
  }
};

inline void write_certificate(std::ostream& os, const Certificate& c) {
  os << "{ \"all_pass\": " << (c.all_pass() ? "true" : "false")
     << ", \"records\": [\n";
  for (size_t i = 0; i < c.records.size(); ++i) {
    const auto& r = c.records[i];
    os << "  {\"condition\": \"" << r.condition << "\", \"sphere\": "
       << r.sphere << ", \"face\": " << r.face << ", \"margin\": \""
       << r.margin.str() << "\", \"pass\": " << (r.pass ? "true" : "false")
       << '}' << (i + 1 < c.records.size() ? "," : "") << '\n';
  }
  os << "] }\n";
}

struct LowerBoundInstance {
  size_t d = 0;
  std::vector<long> n;           // (n1, n2) or the m class counts
  Rational z1, z2;               // heights of the two point layers
  Rational R;                    // rational stand-in for sqrt(delta)
  Rational rho;                  // stack sphere radius
  Rational eps;                  // perturbation scale
  Rational r;                    // tiny-radius base, 0 for two radii
  SphereSet spheres;
  Certificate certificate;
};

namespace detail {

// (N1, N2) layer layout shared by generation and re-certification: two
// classes mean (grid size, stack size); three or more mean the stack count
// comes first and the remaining classes split the prism grid.
inline std::pair<long, long> class_layout(const std::vector<long>& n) {
  if (n.size() < 2) throw std::invalid_argument("layout: bad class count");
  long N1 = 0, N2 = 0;
  if (n.size() == 2) {
    N1 = n[0];
    N2 = n[1];
  } else {
    N2 = n[0];
    for (size_t i = 1; i < n.size(); ++i) N1 += n[i];
  }
  return {N1, N2};
}

// Squared distance from c to the convex hull of a face's vertices; the
// minimum-norm program over differences is exactly that distance.
inline Rational dist_sq_to_face(const FaceLattice& l, const Face& f,
                                const Point& c) {
  Mat u;
  std::vector<Rational> t;
  for (int v : f.vertices) {
    u.push_back(vec_sub(l.vertex_coords[size_t(v)], c));
    t.push_back(Rational(1));
  }
  auto qp = min_norm_qp(u, t);
  if (!qp) throw std::logic_error("distance program infeasible");
  return qp->min_sq;
}

// Exact decision of sqrt(a) + sqrt(b) < h for rationals a, b >= 0.
inline bool sum_sqrt_less(const Rational& a, const Rational& b,
                          const Rational& h) {
  if (h.sign() <= 0) return false;
  Rational gap = h * h - a - b;
  if (gap.sign() <= 0) return false;
  return Rational(4) * a * b < gap * gap;
}

// Prism over two translated copies of a moment-curve point set, with its
// face classes precomputed.
struct PrismData {
  size_t d = 0;
  long N1 = 0, N2 = 0;
  long delta = 0;
  Rational z1, z2, R;
  Mat sigma1, sigma2;                    // E^d layer points, Y- point last
  FaceLattice prism;
  std::vector<size_t> ridges;            // face positions, dim d-2
  std::vector<size_t> vertical_facets;   // facet positions in faces[]
  std::vector<size_t> yplus_vertical;    // subset with all vertices x1 > 0
};

inline Rational default_axis_scale(long delta) {
  auto exact = exact_sqrt(Rational(delta));
  if (exact) return *exact;
  return rational_sqrt_between(Rational(delta),
                               Rational(delta) + Rational(1, 2));
}

inline PrismData build_prism(size_t d, long N1, long N2, uint64_t seed) {
  PrismData P;
  P.d = d;
  P.N1 = N1;
  P.N2 = N2;
  P.delta = long(d - 1) / 2;
  P.R = default_axis_scale(P.delta);
  P.z1 = Rational(0);
  P.z2 = Rational(2 * N2 + 5) * P.R;

  SplitMix64 rng(seed);
  MomentCurveParams mc;
  mc.two_delta = d - 1;
  // Jittered parameter grid kept below 4/5, so the extreme curve points stay
  // well short of the x1 = 0 meridian and the radius window cannot collapse.
  for (long i = 0; i < N1; ++i)
    mc.s.push_back(Rational(4 * (i + 1) + long(rng.bounded(3)),
                            5 * (N1 + 1)));
  mc.s.push_back(Rational(2 + long(rng.bounded(3))));  // the Y- point
  Mat base = moment_curve_points(mc);

  for (const auto& p : base) {
    Vec q1 = p, q2 = p;
    q1.push_back(P.z1);
    q2.push_back(P.z2);
    P.sigma1.push_back(std::move(q1));
    P.sigma2.push_back(std::move(q2));
  }

  Mat both = P.sigma1;
  both.insert(both.end(), P.sigma2.begin(), P.sigma2.end());
  P.prism = hull(both);
  if (P.prism.intrinsic_dim != int(d))
    throw std::logic_error("prism is not full-dimensional");

  for (size_t i = 0; i < P.prism.faces.size(); ++i)
    if (P.prism.faces[i].dim == int(d) - 2) P.ridges.push_back(i);
  for (size_t pos : P.prism.facet_positions) {
    const Face& f = P.prism.faces[pos];
    bool at_z1 = true, at_z2 = true, yplus = true;
    for (int v : f.vertices) {
      const Point& p = P.prism.vertex_coords[size_t(v)];
      at_z1 = at_z1 && p.back() == P.z1;
      at_z2 = at_z2 && p.back() == P.z2;
      yplus = yplus && p[0].sign() > 0;
    }
    if (at_z1 || at_z2) continue;
    P.vertical_facets.push_back(pos);
    if (yplus) P.yplus_vertical.push_back(pos);
  }
  return P;
}

inline Point axis_point(const PrismData& P, long k) {
  Point c(P.d, Rational(0));
  c.back() = Rational(2 * k + 1) * P.R;
  return c;
}

// Condition suite shared by the searches and the final certificate.
// r_max widens every predicate so it also covers spheres of radius up to
// r_max placed at the prism vertices.  early_exit stops at first failure.
inline Certificate run_prism_checks(const PrismData& P, const Rational& rho,
                                    const Rational& r_max,
                                    const Mat& stack_centers, bool early_exit) {
  Certificate cert;
  Rational outer = rho + r_max, inner = rho - r_max;
  auto emit = [&](const char* name, long k, uint64_t face, Rational margin) {
    CheckRecord rec{name, k, face, std::move(margin), false};
    rec.pass = rec.margin.sign() > 0;
    cert.records.push_back(std::move(rec));
    return cert.records.back().pass;
  };
  for (long k = 0; k < long(stack_centers.size()); ++k) {
    Point c0 = axis_point(P, k);
    const Point& c1 = stack_centers[size_t(k)];
    for (size_t pos : P.ridges) {
      const Face& f = P.prism.faces[pos];
      Rational d0 = dist_sq_to_face(P.prism, f, c0);
      if (!emit("ridge-clear", k, f.id, d0 - outer * outer) && early_exit)
        return cert;
      Rational d1 = dist_sq_to_face(P.prism, f, c1);
      if (!emit("ridge-clear-perturbed", k, f.id, d1 - outer * outer) &&
          early_exit)
        return cert;
    }
    for (size_t pos : P.vertical_facets) {
      const Face& f = P.prism.faces[pos];
      Rational d0 = dist_sq_to_face(P.prism, f, c0);
      if (!emit("facet-reach", k, f.id, inner * inner - d0) && early_exit)
        return cert;
    }
    for (size_t pos : P.yplus_vertical) {
      const Face& f = P.prism.faces[pos];
      Rational d1 = dist_sq_to_face(P.prism, f, c1);
      if (!emit("facet-reach-perturbed", k, f.id, inner * inner - d1) &&
          early_exit)
        return cert;

      // Radical-sphere separation: the equal-radius intersection sphere of
      // the stack sphere and its perturbed copy must stay strictly on the
      // prism side of the facet plane, with slack for the tiny radii.
      const Hyperplane& h = *f.support;
      Rational mu = c1[0] - c0[0];  // perturbation is along e1
      Rational qsq = rho * rho - mu * mu / Rational(4);
      Point w = c0;
      w[0] += mu / Rational(2);
      Rational hh = h.offset - dot(h.normal, w);
      Rational margin;
      if (qsq.sign() <= 0) {
        margin = Rational(1);  // empty intersection, vacuously separated
      } else {
        Rational nn = dot(h.normal, h.normal);
        Rational gg = nn - h.normal[0] * h.normal[0];
        bool ok = sum_sqrt_less(qsq * gg, r_max * r_max * nn, hh);
        if (ok) {
          Rational gap = hh * hh - qsq * gg - r_max * r_max * nn;
          margin = gap * gap - Rational(4) * qsq * gg * r_max * r_max * nn;
        } else {
          margin = (hh.sign() <= 0) ? hh : hh * hh - qsq * gg;
          if (margin.sign() > 0) margin = -margin;
        }
      }
      if (!emit("radical-separation", k, f.id, std::move(margin)) &&
          early_exit)
        return cert;
    }
  }
  return cert;
}

inline Mat perturbed_stack(const PrismData& P, const Rational& eps) {
  Mat out;
  Rational half_pow(1);  // 1/2^k, so shifts eps*(2 - 1/2^k) strictly increase
  for (long k = 0; k <= P.N2 + 1; ++k) {
    Point c = axis_point(P, k);
    c[0] = c[0] + eps * (Rational(2) - half_pow);
    half_pow = half_pow / Rational(2);
    out.push_back(std::move(c));
  }
  return out;
}

// Picks the stack radius inside the exact feasibility window: above every
// facet distance (so spheres poke through all vertical facets), below every
// ridge distance and below R, and below the limit value of the radical
// predicate at vanishing perturbation (rho^2 (|n|^2 - n1^2) < (o - n.c)^2),
// without which no perturbation scale can satisfy it.
inline Rational pick_stack_radius(const PrismData& P) {
  Rational lo_sq(0), hi_sq = P.R * P.R;
  const char* cap_reason = "axis scale";
  for (long k = 0; k <= P.N2 + 1; ++k) {
    Point c = axis_point(P, k);
    for (size_t pos : P.vertical_facets) {
      Rational dsq = dist_sq_to_face(P.prism, P.prism.faces[pos], c);
      if (dsq > lo_sq) lo_sq = dsq;
    }
    for (size_t pos : P.ridges) {
      Rational dsq = dist_sq_to_face(P.prism, P.prism.faces[pos], c);
      if (dsq < hi_sq) {
        hi_sq = dsq;
        cap_reason = "ridge clearance";
      }
    }
  }
  Point c0 = axis_point(P, 0);
  for (size_t pos : P.yplus_vertical) {
    const Hyperplane& h = *P.prism.faces[pos].support;
    Rational nn = dot(h.normal, h.normal);
    Rational gg = nn - h.normal[0] * h.normal[0];
    if (gg.is_zero()) continue;  // facet faces e1 head-on, no constraint
    Rational lim = h.eval(c0) * h.eval(c0) / gg;
    if (lim < hi_sq) {
      hi_sq = lim;
      cap_reason = "radical limit";
    }
  }
  if (!(lo_sq < hi_sq))
    throw std::runtime_error(
        std::string("stack radius window is empty (facet reach vs ") +
        cap_reason + ")");
  return rational_sqrt_between(lo_sq, hi_sq);
}

inline Rational pick_perturbation(const PrismData& P, const Rational& rho) {
  Rational eps(1, 2);
  for (int iter = 0; iter < 100; ++iter, eps = eps / Rational(2)) {
    Certificate c = run_prism_checks(P, rho, Rational(0),
                                     perturbed_stack(P, eps), true);
    if (c.all_pass()) return eps;
  }
  Certificate c =
      run_prism_checks(P, rho, Rational(0), perturbed_stack(P, eps), true);
  throw std::runtime_error(
      std::string("perturbation search exhausted, failing condition: ") +
      (c.first_failure() ? c.first_failure()->condition : "unknown"));
}

inline SphereSet assemble(const PrismData& P,
                          const std::vector<Rational>& layer_radii,
                          const Rational& rho, const Mat& stack) {
  SphereSet ss;
  ss.dim = P.d;
  for (size_t i = 0; i < P.sigma1.size(); ++i)
    ss.spheres.push_back({P.sigma1[i], layer_radii[i]});
  for (size_t i = 0; i < P.sigma2.size(); ++i)
    ss.spheres.push_back({P.sigma2[i], layer_radii[i]});
  for (const auto& c : stack) ss.spheres.push_back({c, rho});
  return ss;
}

// Center map equivalence.  Mixed tiny radii split flat patches into
// weighted-Voronoi pieces, so the sphere prism has MORE faces than the
// point prism at every r > 0; what shrinking r buys is that every piece
// nests inside a single point-prism patch.  Checked as: each reported face
// joins (smallest containing face of its centers) into a proper face of
// the point prism of dimension >= d-1-circularity, and every proper face
// is the join of at least one reported face of matching dimension.
inline bool prism_equivalent(const FaceLattice& delta0,
                             const SphereSet& prism_spheres) {
  SphereHullResult rep = sphere_hull_faces(prism_spheres);
  if (!rep.report.degenerate.empty()) return false;
  std::map<Point, int> vid;
  for (size_t i = 0; i < delta0.n_vertices(); ++i)
    vid[delta0.vertex_coords[i]] = int(i);
  std::vector<size_t> proper;  // positions ordered by dim, then id
  for (size_t i = 0; i < delta0.faces.size(); ++i)
    if (delta0.faces[i].dim >= 0 &&
        delta0.faces[i].dim < delta0.intrinsic_dim)
      proper.push_back(i);
  std::sort(proper.begin(), proper.end(), [&](size_t a, size_t b) {
    return delta0.faces[a].dim != delta0.faces[b].dim
               ? delta0.faces[a].dim < delta0.faces[b].dim
               : delta0.faces[a].id < delta0.faces[b].id;
  });
  std::set<uint64_t> witnessed;
  for (const auto& [circ, ids] : rep.report.witnesses) {
    for (uint64_t id : ids) {
      const Face& f = rep.lattice.face(id);
      std::vector<int> centers;
      for (int v : f.vertices) {
        Point c = rep.lattice.vertex_coords[size_t(v)];
        c.pop_back();
        auto it = vid.find(c);
        if (it == vid.end()) return false;
        centers.push_back(it->second);
      }
      std::sort(centers.begin(), centers.end());
      centers.erase(std::unique(centers.begin(), centers.end()),
                    centers.end());
      const Face* join = nullptr;
      for (size_t pos : proper) {
        const Face& cand = delta0.faces[pos];
        if (std::includes(cand.vertices.begin(), cand.vertices.end(),
                          centers.begin(), centers.end())) {
          join = &cand;
          break;
        }
      }
      if (!join) return false;  // face straddles point-prism patches
      int want = int(delta0.ambient_dim) - 1 - circ;
      if (join->dim < want) return false;
      if (join->dim == want) witnessed.insert(join->id);
    }
  }
  return witnessed.size() == proper.size();
}

}  // namespace detail

// Rebuilds the instance skeleton from an emitted sphere set: layer heights
// come from the prism block and the axis scale from the stack spacing, so a
// round-tripped file re-certifies without the construction-time fields.
inline LowerBoundInstance instance_from_spheres(const SphereSet& ss,
                                                const std::vector<long>& n) {
  auto [N1, N2] = detail::class_layout(n);
  size_t prism_count = size_t(2 * (N1 + 1));
  if (ss.spheres.size() != prism_count + size_t(N2 + 2))
    throw std::invalid_argument("instance: sphere count mismatch");
  LowerBoundInstance inst;
  inst.d = ss.dim;
  inst.n = n;
  inst.spheres = ss;
  inst.z1 = inst.z2 = ss.spheres[0].center.back();
  for (size_t i = 1; i < prism_count; ++i) {
    const Rational& h = ss.spheres[i].center.back();
    if (h < inst.z1) inst.z1 = h;
    if (h > inst.z2) inst.z2 = h;
  }
  inst.R = (ss.spheres[prism_count + 1].center.back() -
            ss.spheres[prism_count].center.back()) /
           Rational(2);
  if (inst.R.sign() <= 0)
    throw std::invalid_argument("instance: stack heights must increase");
  inst.rho = ss.spheres[prism_count].radius;
  return inst;
}

// Re-derives every feasibility predicate from the emitted instance alone.
inline Certificate check_conditions(const LowerBoundInstance& inst) {
  size_t m = inst.n.size();
  auto [N1, N2] = detail::class_layout(inst.n);
  size_t prism_count = size_t(2 * (N1 + 1));
  if (inst.spheres.spheres.size() != prism_count + size_t(N2 + 2))
    throw std::invalid_argument("check_conditions: sphere count mismatch");

  detail::PrismData P;
  P.d = inst.d;
  P.N1 = N1;
  P.N2 = N2;
  P.delta = long(inst.d - 1) / 2;
  P.R = inst.R;
  P.z1 = inst.z1;
  P.z2 = inst.z2;
  Mat centers;
  Rational r_max(0);
  for (size_t i = 0; i < prism_count; ++i) {
    const Sphere& s = inst.spheres.spheres[i];
    centers.push_back(s.center);
    if (s.radius > r_max) r_max = s.radius;
  }
  P.prism = hull(centers);
  for (size_t i = 0; i < P.prism.faces.size(); ++i)
    if (P.prism.faces[i].dim == int(P.d) - 2) P.ridges.push_back(i);
  for (size_t pos : P.prism.facet_positions) {
    const Face& f = P.prism.faces[pos];
    bool at_z1 = true, at_z2 = true, yplus = true;
    for (int v : f.vertices) {
      const Point& p = P.prism.vertex_coords[size_t(v)];
      at_z1 = at_z1 && p.back() == P.z1;
      at_z2 = at_z2 && p.back() == P.z2;
      yplus = yplus && p[0].sign() > 0;
    }
    if (at_z1 || at_z2) continue;
    P.vertical_facets.push_back(pos);
    if (yplus) P.yplus_vertical.push_back(pos);
  }

  Mat stack;
  Rational rho = inst.spheres.spheres[prism_count].radius;
  for (size_t i = prism_count; i < inst.spheres.spheres.size(); ++i)
    stack.push_back(inst.spheres.spheres[i].center);

  Certificate cert = detail::run_prism_checks(P, rho, r_max, stack, false);
  if (m >= 3) {
    SphereSet prism_part;
    prism_part.dim = inst.d;
    prism_part.spheres.assign(inst.spheres.spheres.begin(),
                              inst.spheres.spheres.begin() + long(prism_count));
    bool eq = detail::prism_equivalent(P.prism, prism_part);
    cert.records.push_back(
        {"prism-equivalence", -1, 0, Rational(eq ? 1 : -1), eq});
  }
  return cert;
}

// Two-radius adversarial family: a moment-curve prism plus a perturbed
// stack of equal spheres threading all its vertical facets.
inline LowerBoundInstance lb2_instance(size_t d, long n1, long n2,
                                       uint64_t seed) {
  if (d < 3 || d % 2 == 0)
    throw std::invalid_argument("lb2: dimension must be odd and at least 3");
  if (n1 < long(d)) throw std::invalid_argument("lb2: need n1 >= d");
  if (n2 < 1) throw std::invalid_argument("lb2: need n2 >= 1");

  detail::PrismData P = detail::build_prism(d, n1, n2, seed);
  Rational rho = detail::pick_stack_radius(P);
  Rational eps = detail::pick_perturbation(P, rho);

  LowerBoundInstance inst;
  inst.d = d;
  inst.n = {n1, n2};
  inst.z1 = P.z1;
  inst.z2 = P.z2;
  inst.R = P.R;
  inst.rho = rho;
  inst.eps = eps;
  inst.r = Rational(0);
  std::vector<Rational> zero(P.sigma1.size(), Rational(0));
  inst.spheres = detail::assemble(P, zero, rho, detail::perturbed_stack(P, eps));
  inst.certificate = check_conditions(inst);
  if (!inst.certificate.all_pass())
    throw std::logic_error("lb2: emitted instance failed its certificate");
  return inst;
}

// m-radius family: same skeleton with the prism points replaced by tiny
// spheres, radius r^i for the i-th class and r^2 for the Y- points, with r
// shrunk until the sphere prism is combinatorially the point prism.
inline LowerBoundInstance lbm_instance(size_t d, const std::vector<long>& n,
                                       uint64_t seed,
                                       std::optional<Rational> fixed_r = {}) {
  if (d < 3 || d % 2 == 0)
    throw std::invalid_argument("lbm: dimension must be odd and at least 3");
  if (n.size() < 3) throw std::invalid_argument("lbm: need at least 3 radii");
  for (long ni : n)
    if (ni < 1) throw std::invalid_argument("lbm: class counts must be >= 1");
  long N2 = n[0], N1 = 0;
  for (size_t i = 1; i < n.size(); ++i) N1 += n[i];
  if (N1 < long(d)) throw std::invalid_argument("lbm: need sum n_i >= d");

  detail::PrismData P = detail::build_prism(d, N1, N2, seed);
  Rational rho = detail::pick_stack_radius(P);
  Rational eps = detail::pick_perturbation(P, rho);
  Mat stack = detail::perturbed_stack(P, eps);

  auto layer_radii = [&](const Rational& r) {
    std::vector<Rational> radii;
    for (size_t i = 1; i < n.size(); ++i) {
      Rational power = r * r;
      for (size_t j = 2; j <= i; ++j) power = power * r;
      radii.insert(radii.end(), size_t(n[i]), power);
    }
    radii.push_back(r * r);  // the Y- point
    return radii;
  };
  auto feasible = [&](const Rational& r) {
    Rational r_max = r * r;
    if (!(r_max < rho)) return false;
    if (!detail::run_prism_checks(P, rho, r_max, stack, true).all_pass())
      return false;
    SphereSet prism_part;
    prism_part.dim = d;
    std::vector<Rational> radii = layer_radii(r);
    for (size_t i = 0; i < P.sigma1.size(); ++i)
      prism_part.spheres.push_back({P.sigma1[i], radii[i]});
    for (size_t i = 0; i < P.sigma2.size(); ++i)
      prism_part.spheres.push_back({P.sigma2[i], radii[i]});
    return detail::prism_equivalent(P.prism, prism_part);
  };

  Rational r = fixed_r.value_or(Rational(1, 2));
  if (fixed_r) {
    if (!feasible(r))
      throw std::runtime_error("lbm: supplied radius base infeasible");
  } else {
    bool found = false;
    for (int iter = 0; iter < 60 && !found; ++iter) {
      if (feasible(r))
        found = true;
      else
        r = r / Rational(2);
    }
    if (!found)
      throw std::runtime_error("lbm: radius base search exhausted");
  }

  LowerBoundInstance inst;
  inst.d = d;
  inst.n = n;
  inst.z1 = P.z1;
  inst.z2 = P.z2;
  inst.R = P.R;
  inst.rho = rho;
  inst.eps = eps;
  inst.r = r;
  inst.spheres = detail::assemble(P, layer_radii(r), rho, stack);
  inst.certificate = check_conditions(inst);
  if (!inst.certificate.all_pass())
    throw std::logic_error("lbm: emitted instance failed its certificate");
  return inst;
}

}  // namespace lifthull
