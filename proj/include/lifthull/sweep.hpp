#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lifthull/bounds.hpp"
#include "lifthull/generators.hpp"
#include "lifthull/minkowski.hpp"

namespace lifthull {

enum class SweepFamily { LB2, LBM, STACKED_RANDOM, CYCLIC, MINKOWSKI_RANDOM };

inline std::string family_name(SweepFamily f) {
  switch (f) {
    case SweepFamily::LB2: return "lb2";
    case SweepFamily::LBM: return "lbm";
    case SweepFamily::STACKED_RANDOM: return "stacked-random";
    case SweepFamily::CYCLIC: return "cyclic";
    case SweepFamily::MINKOWSKI_RANDOM: return "minkowski-random";
  }
  throw std::logic_error("family_name: unhandled family");
}

inline SweepFamily parse_family(const std::string& name) {
  if (name == "lb2") return SweepFamily::LB2;
  if (name == "lbm") return SweepFamily::LBM;
  if (name == "stacked-random") return SweepFamily::STACKED_RANDOM;
  if (name == "cyclic") return SweepFamily::CYCLIC;
  if (name == "minkowski-random") return SweepFamily::MINKOWSKI_RANDOM;
  throw std::invalid_argument("unknown family: " + name);
}

struct SweepSpec {
  SweepFamily family = SweepFamily::CYCLIC;
  std::vector<std::vector<long>> schedule;  // one size tuple per row
  long d = 4;
  uint64_t seed = 1;
  std::string out;               // CSV destination, empty = stdout
  bool general_position = false; // degenerate tangencies become row errors
  size_t oracle_directions = 0;  // per-row probe count, sphere families only
};

inline bool is_sphere_family(SweepFamily f) {
  return f == SweepFamily::LB2 || f == SweepFamily::LBM;
}

inline void validate(const SweepSpec& s) {
  if (s.schedule.empty()) throw std::invalid_argument("sweep: empty schedule");
  long prev_total = 0;
  for (const auto& tuple : s.schedule) {
    if (tuple.empty()) throw std::invalid_argument("sweep: empty size tuple");
    long total = 0;
    for (long v : tuple) {
      if (v < 1) throw std::invalid_argument("sweep: sizes must be positive");
      total += v;
    }
    if (total <= prev_total)
      throw std::invalid_argument("sweep: schedule must increase in total size");
    prev_total = total;
  }
  size_t arity = 0;
  switch (s.family) {
    case SweepFamily::LB2: arity = 2; break;
    case SweepFamily::CYCLIC: arity = 1; break;
    case SweepFamily::MINKOWSKI_RANDOM: arity = 2; break;
    default: break;  // lbm and stacked-random take any layer count
  }
  for (const auto& tuple : s.schedule) {
    if (arity && tuple.size() != arity)
      throw std::invalid_argument("sweep: wrong tuple arity for family");
    if (s.family == SweepFamily::LBM && tuple.size() < 3)
      throw std::invalid_argument("sweep: lbm needs at least 3 layer sizes");
  }
  if (is_sphere_family(s.family) && (s.d < 3 || s.d % 2 == 0))
    throw std::invalid_argument("sweep: lower-bound families need odd d >= 3");
  if (s.family == SweepFamily::CYCLIC && (s.d < 2 || s.d % 2 != 0))
    throw std::invalid_argument("sweep: cyclic family needs even d >= 2");
  if (s.family == SweepFamily::STACKED_RANDOM && s.d < 2)
    throw std::invalid_argument("sweep: stacked-random needs d >= 2");
  if (s.d < 1) throw std::invalid_argument("sweep: need d >= 1");
}

struct SweepRow {
  std::string family;
  long d = 0;
  std::vector<long> n;
  long long total_faces = 0;
  std::string counts_json;      // face counts by dimension or circularity
  Int bound = 0;                // master_bound over the row's layer sizes
  double seconds = 0;
  std::string error;            // nonempty when the generator refused
  long long oracle_faces = -1;  // distinct probed faces, -1 when unchecked
};

struct SweepFit {
  double slope = 0, intercept = 0, residual = 0;
  double theoretical = 0;
  size_t points_used = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepFit fit;
};

// Random rational points with small numerators and denominators; shared by
// the stacked-random and minkowski-random families and by the CLI generator
// so both produce identical instances from the same stream.
inline Mat random_rational_points(SplitMix64& rng, size_t n, size_t dim) {
  Mat pts;
  for (size_t i = 0; i < n; ++i) {
    Point p(dim);
    for (auto& c : p)
      c = Rational(long(rng.bounded(2001)) - 1000, 1 + long(rng.bounded(32)));
    pts.push_back(std::move(p));
  }
  return pts;
}

inline LayeredPointSet stacked_random_instance(const std::vector<long>& tuple,
                                               long d, SplitMix64& rng) {
  if (d < 2) throw std::invalid_argument("stacked-random: need d >= 2");
  LayeredPointSet lp;
  lp.dim = size_t(d) - 1;
  for (size_t j = 0; j < tuple.size(); ++j)
    lp.layers.push_back(
        {Rational(long(j)), random_rational_points(rng, size_t(tuple[j]), lp.dim)});
  return lp;
}

// Jittered strictly increasing curve parameters: consecutive windows
// [i+1, i+1+15/16) never overlap, so monotonicity holds for any jitter.
inline Mat cyclic_instance(long n, long d, SplitMix64& rng) {
  MomentCurveParams mc;
  mc.two_delta = size_t(d);
  for (long i = 0; i < n; ++i)
    mc.s.push_back(Rational(16 * (i + 1) + long(rng.bounded(15)), 16));
  return moment_curve_points(mc);
}

inline WeightedSumSpec minkowski_random_instance(long np, long nq, long d,
                                                 SplitMix64& rng) {
  WeightedSumSpec ws;
  ws.P = random_rational_points(rng, size_t(np), size_t(d));
  ws.Q = random_rational_points(rng, size_t(nq), size_t(d));
  ws.lambda = Rational(1, 2);
  return ws;
}

namespace detail {

inline std::string counts_to_json(const std::map<int, long long>& counts) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [k, v] : counts) {
    os << (first ? "" : ",") << '"' << k << "\":" << v;
    first = false;
  }
  os << '}';
  return os.str();
}

inline std::map<int, long long> proper_face_counts(const FaceLattice& l) {
  FVector fv = f_vector(l);
  std::map<int, long long> counts;
  for (int k = 0; k < l.intrinsic_dim; ++k) counts[k] = fv[size_t(k) + 1];
  return counts;
}

inline std::vector<long> layer_counts_by_height(const Mat& pts) {
  std::map<Rational, long> groups;
  for (const auto& p : pts) groups[p.back()] += 1;
  std::vector<long> n;
  for (const auto& [h, k] : groups) n.push_back(k);
  return n;
}

// Fills the count/bound fields for one schedule entry; timing and error
// capture live in run_sweep.
inline void run_row(const SweepSpec& spec, const std::vector<long>& tuple,
                    SplitMix64& rng, SweepRow& row) {
  switch (spec.family) {
    case SweepFamily::LB2:
    case SweepFamily::LBM: {
      LowerBoundInstance inst =
          spec.family == SweepFamily::LB2
              ? lb2_instance(size_t(spec.d), tuple[0], tuple[1], rng.next())
              : lbm_instance(size_t(spec.d), tuple, rng.next());
      SphereHullResult res = sphere_hull_faces(inst.spheres);
      if (spec.general_position && !res.report.degenerate.empty())
        throw std::runtime_error("degenerate tangency under --general-position");
      row.total_faces = res.report.total();
      row.counts_json = counts_to_json(res.report.counts);
      Mat centers;
      for (const auto& s : inst.spheres.spheres) centers.push_back(s.center);
      row.bound = master_bound(layer_counts_by_height(centers), spec.d);
      if (spec.oracle_directions) {
        std::set<uint64_t> seen;
        for (size_t i = 0; i < spec.oracle_directions; ++i)
          seen.insert(direction_probe(
              res.lattice, rational_unit_vector(size_t(spec.d), rng)));
        row.oracle_faces = (long long)(seen.size());
      }
      return;
    }
    case SweepFamily::STACKED_RANDOM: {
      FaceLattice l = stacked_hull(stacked_random_instance(tuple, spec.d, rng));
      auto counts = proper_face_counts(l);
      for (const auto& [k, v] : counts) row.total_faces += v;
      row.counts_json = counts_to_json(counts);
      row.bound = master_bound(tuple, spec.d);
      return;
    }
    case SweepFamily::CYCLIC: {
      Mat pts = cyclic_instance(tuple[0], spec.d, rng);
      FaceLattice l = hull(pts);
      auto counts = proper_face_counts(l);
      for (const auto& [k, v] : counts) row.total_faces += v;
      row.counts_json = counts_to_json(counts);
      row.bound = master_bound(layer_counts_by_height(pts), spec.d);
      return;
    }
    case SweepFamily::MINKOWSKI_RANDOM: {
      FaceLattice l = weighted_minkowski(
          minkowski_random_instance(tuple[0], tuple[1], spec.d, rng));
      auto counts = proper_face_counts(l);
      for (const auto& [k, v] : counts) row.total_faces += v;
      row.counts_json = counts_to_json(counts);
      row.bound = master_bound(tuple, spec.d);
      return;
    }
  }
  throw std::logic_error("run_row: unhandled family");
}

}  // namespace detail

// Exponent of the family's theoretical growth in the equal-sizes scaling.
inline double theoretical_exponent(SweepFamily f, long d) {
  switch (f) {
    case SweepFamily::LB2:
    case SweepFamily::LBM:
    case SweepFamily::MINKOWSKI_RANDOM: return double(d / 2 + 1);
    case SweepFamily::CYCLIC: return double(d / 2);
    case SweepFamily::STACKED_RANDOM: return 1.0;
  }
  throw std::logic_error("theoretical_exponent: unhandled family");
}

// OLS on log(total_faces) vs log(sum of the size tuple), dropping the
// smallest size as a transient; error rows are skipped.
inline SweepFit fit_rows(const std::vector<SweepRow>& rows, SweepFamily family,
                         long d) {
  SweepFit fit;
  fit.theoretical = theoretical_exponent(family, d);
  std::vector<double> xs, ys;
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].error.empty() || rows[i].total_faces <= 0) continue;
    long total = 0;
    for (long v : rows[i].n) total += v;
    xs.push_back(std::log(double(total)));
    ys.push_back(std::log(double(rows[i].total_faces)));
  }
  if (xs.size() > 2) {
    xs.erase(xs.begin());
    ys.erase(ys.begin());
  }
  fit.points_used = xs.size();
  if (xs.size() < 2) return fit;
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= double(xs.size());
  my /= double(xs.size());
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    fit.residual += r * r;
  }
  return fit;
}

// CSV contract: header below, n_vector joined with '|', counts_json quoted
// with inner quotes doubled.  with_timing=false zeroes the seconds column so
// reruns of the same spec and seed compare byte-identical.
inline std::string sweep_csv(const std::vector<SweepRow>& rows,
                             bool with_timing = true) {
  std::ostringstream os;
  os << "family,d,n_vector,total_faces,counts_json,bound,seconds\n";
  for (const auto& row : rows) {
    os << row.family << ',' << row.d << ',';
    for (size_t i = 0; i < row.n.size(); ++i) os << (i ? "|" : "") << row.n[i];
    os << ',' << row.total_faces << ',';
    std::string field =
        row.error.empty()
            ? row.counts_json
            : "{\"error\":\"" + row.error + "\"}";  // error rows stay in-band
    os << '"';
    for (char c : field) {
      os << c;
      if (c == '"') os << c;
    }
    os << "\",";
    os << row.bound.get_str() << ',';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", with_timing ? row.seconds : 0.0);
    os << buf << '\n';
  }
  return os.str();
}

inline std::string fit_report(const SweepResult& r) {
  std::ostringstream os;
  os << "fit: points=" << r.fit.points_used << " slope=" << r.fit.slope
     << " theoretical=" << r.fit.theoretical
     << " intercept=" << r.fit.intercept << " residual=" << r.fit.residual
     << '\n';
  return os.str();
}

inline SweepResult run_sweep(const SweepSpec& spec) {
  validate(spec);
  SweepResult out;
  for (size_t i = 0; i < spec.schedule.size(); ++i) {
    SweepRow row;
    row.family = family_name(spec.family);
    row.d = spec.d;
    row.n = spec.schedule[i];
    SplitMix64 rng = SplitMix64::stream(spec.seed, i);
    auto t0 = std::chrono::steady_clock::now();
    try {
      detail::run_row(spec, spec.schedule[i], rng, row);
    } catch (const std::runtime_error& e) {
      row.error = e.what();  // infeasibility is data, not a crash
      row.total_faces = 0;
      row.counts_json.clear();
    }
    row.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    out.rows.push_back(std::move(row));
  }
  out.fit = fit_rows(out.rows, spec.family, spec.d);
  return out;
}

}  // namespace lifthull
