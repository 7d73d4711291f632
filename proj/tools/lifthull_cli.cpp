#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lifthull/io.hpp"
#include "lifthull/sweep.hpp"

using namespace lifthull;

namespace {

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::vector<std::vector<long>> parse_sizes(const std::vector<std::string>& raw) {
  std::vector<std::vector<long>> out;
  for (const auto& chunk : raw) {
    std::string cur;
    std::istringstream is(chunk);
    while (std::getline(is, cur, ';')) {
      if (cur.empty()) continue;
      std::vector<long> tuple;
      std::istringstream ts(cur);
      std::string tok;
      while (std::getline(ts, tok, ',')) tuple.push_back(std::stol(tok));
      if (tuple.empty()) throw std::runtime_error("empty size tuple");
      out.push_back(std::move(tuple));
    }
  }
  if (out.empty()) throw std::runtime_error("no sizes given");
  return out;
}

std::string fvector_line(const FaceLattice& l) {
  std::ostringstream os;
  os << "intrinsic_dim=" << l.intrinsic_dim << " f_vector=";
  FVector fv = f_vector(l);
  for (size_t i = 0; i < fv.size(); ++i) os << (i ? "," : "") << fv[i];
  os << '\n';
  return os.str();
}

std::string certificate_text(const Certificate& c) {
  std::ostringstream os;
  write_certificate(os, c);
  return os.str();
}

std::string witness_dump(const SphereHullResult& res) {
  std::vector<std::pair<int, std::vector<int>>> rows;
  for (const auto& [circ, ids] : res.report.witnesses)
    for (uint64_t id : ids) {
      const Face& f = res.lattice.face(id);
      rows.push_back({f.dim, f.vertices});
    }
  std::sort(rows.begin(), rows.end());
  std::ostringstream os;
  os << "#witnesses\n";
  for (const auto& [dim, verts] : rows) {
    os << dim << ";";
    for (size_t i = 0; i < verts.size(); ++i)
      os << (i ? "," : " ") << verts[i];
    os << '\n';
  }
  return os.str();
}

int run_gen(const std::string& family, long d, uint64_t seed,
            const std::vector<std::vector<long>>& sizes,
            const std::string& out) {
  SweepFamily fam = parse_family(family);
  const std::vector<long>& tuple = sizes.front();
  SplitMix64 rng = SplitMix64::stream(seed, 0);
  switch (fam) {
    case SweepFamily::LB2:
    case SweepFamily::LBM: {
      if (fam == SweepFamily::LB2 && tuple.size() != 2)
        throw std::runtime_error("lb2 takes sizes n1,n2");
      LowerBoundInstance inst =
          fam == SweepFamily::LB2
              ? lb2_instance(size_t(d), tuple[0], tuple[1], rng.next())
              : lbm_instance(size_t(d), tuple, rng.next());
      std::ostringstream os;
      write_spheres(os, inst.spheres);
      if (out.empty()) {
        std::cout << os.str();
        std::cerr << certificate_text(inst.certificate);
      } else {
        emit(out + ".spheres", os.str());
        emit(out + ".cert", certificate_text(inst.certificate));
      }
      return 0;
    }
    case SweepFamily::STACKED_RANDOM: {
      LayeredPointSet lp = stacked_random_instance(tuple, d, rng);
      emit(out.empty() ? "" : out + ".layers", layered_dump(lp));
      return 0;
    }
    case SweepFamily::CYCLIC: {
      Mat pts = cyclic_instance(tuple[0], d, rng);
      emit(out.empty() ? "" : out + ".points", points_dump(pts));
      return 0;
    }
    case SweepFamily::MINKOWSKI_RANDOM: {
      if (tuple.size() != 2)
        throw std::runtime_error("minkowski-random takes sizes n,m");
      if (out.empty())
        throw std::runtime_error("minkowski-random needs --out (two files)");
      WeightedSumSpec ws = minkowski_random_instance(tuple[0], tuple[1], d, rng);
      emit(out + ".P.points", points_dump(ws.P));
      emit(out + ".Q.points", points_dump(ws.Q));
      return 0;
    }
  }
  throw std::logic_error("gen: unhandled family");
}

int run_hull(const std::string& input, bool layered, const std::string& out) {
  std::string text = slurp(input);
  FaceLattice l =
      layered ? stacked_hull(parse_layered(text)) : hull(parse_points(text));
  emit(out, lattice_dump(l));
  (out.empty() ? std::cerr : std::cout) << fvector_line(l);
  return 0;
}

int run_spherehull(const std::string& input, bool general_position,
                   const std::string& out) {
  std::istringstream is(slurp(input));
  SphereSet ss = read_spheres(is);
  SphereHullResult res = sphere_hull_faces(ss);
  if (general_position && !res.report.degenerate.empty())
    throw std::runtime_error("degenerate tangency under --general-position");
  emit(out, report_csv(res.report) + witness_dump(res));
  return 0;
}

int run_minksum(const std::string& pfile, const std::string& qfile,
                const std::string& lambda, bool oracle,
                const std::string& out) {
  WeightedSumSpec ws;
  ws.P = parse_points(slurp(pfile));
  ws.Q = parse_points(slurp(qfile));
  ws.lambda = Rational::parse(lambda);
  FaceLattice l = oracle ? minkowski_oracle(ws) : weighted_minkowski(ws);
  emit(out, lattice_dump(l));
  (out.empty() ? std::cerr : std::cout) << fvector_line(l);
  return 0;
}

int run_bounds(long d, long k, long gap, const std::vector<long>& layers) {
  std::cout << "master_bound=" << master_bound(layers, d).get_str() << '\n';
  if (k > 0) {
    std::cout << "fbound=" << fbound_formula(k, layers).get_str() << '\n';
    if (gap > 0)
      std::cout << "crossing_bound="
                << crossing_bound(k, layers, size_t(gap)).get_str() << '\n';
  }
  return 0;
}

int run_check(const std::string& input, const std::vector<long>& sizes,
              const std::string& out) {
  std::istringstream is(slurp(input));
  LowerBoundInstance inst = instance_from_spheres(read_spheres(is), sizes);
  Certificate cert = check_conditions(inst);
  emit(out, certificate_text(cert));
  return cert.all_pass() ? 0 : 1;
}

int run_sweep_cmd(const std::string& family, long d, uint64_t seed,
                  const std::vector<std::vector<long>>& sizes,
                  const std::string& out, bool general_position,
                  size_t oracle_directions) {
  SweepSpec spec;
  spec.family = parse_family(family);
  spec.schedule = sizes;
  spec.d = d;
  spec.seed = seed;
  spec.out = out;
  spec.general_position = general_position;
  spec.oracle_directions = oracle_directions;
  SweepResult res = run_sweep(spec);
  emit(out, sweep_csv(res.rows));
  (out.empty() ? std::cerr : std::cout) << fit_report(res);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact convex hulls of points and spheres on parallel planes"};
  app.require_subcommand(1);

  std::string family = "cyclic", out, input, qfile, lambda = "1/2";
  std::vector<std::string> sizes_raw;
  long d = 4, k = 0, gap = 0;
  uint64_t seed = 1;
  bool general_position = false, layered = false, oracle = false;
  size_t oracle_directions = 0;
  std::vector<long> layers;

  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--family", family)->required();
  gen->add_option("--dim", d);
  gen->add_option("--sizes", sizes_raw)->required();
  gen->add_option("--seed", seed);
  gen->add_option("--out", out);

  auto* hullc = app.add_subcommand("hull", "face lattice of a point set");
  hullc->add_option("input", input)->required();
  hullc->add_flag("--layered", layered, "input is a layered file");
  hullc->add_option("--out", out);

  auto* sph = app.add_subcommand("spherehull", "circularity report of spheres");
  sph->add_option("input", input)->required();
  sph->add_flag("--general-position", general_position);
  sph->add_option("--out", out);

  auto* mink = app.add_subcommand("minksum", "weighted Minkowski sum");
  mink->add_option("P", input)->required();
  mink->add_option("Q", qfile)->required();
  mink->add_option("--lambda", lambda);
  mink->add_flag("--oracle", oracle, "use the pairwise-sum oracle");
  mink->add_option("--out", out);

  auto* bnd = app.add_subcommand("bounds", "evaluate face-count bounds");
  bnd->add_option("--dim", d)->required();
  bnd->add_option("--layers", layers)->required()->delimiter(',');
  bnd->add_option("--k", k);
  bnd->add_option("--gap", gap);

  auto* chk = app.add_subcommand("check", "re-certify a generated instance");
  chk->add_option("input", input)->required();
  chk->add_option("--sizes", layers)->required()->delimiter(',');
  chk->add_option("--out", out);

  auto* swp = app.add_subcommand("sweep", "growth sweep with exponent fit");
  swp->add_option("--family", family)->required();
  swp->add_option("--dim", d);
  swp->add_option("--sizes", sizes_raw)->required();
  swp->add_option("--seed", seed);
  swp->add_option("--out", out);
  swp->add_flag("--general-position", general_position);
  swp->add_option("--oracle-directions", oracle_directions);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_gen(family, d, seed, parse_sizes(sizes_raw), out);
    if (hullc->parsed()) return run_hull(input, layered, out);
    if (sph->parsed()) return run_spherehull(input, general_position, out);
    if (mink->parsed()) return run_minksum(input, qfile, lambda, oracle, out);
    if (bnd->parsed()) return run_bounds(d, k, gap, layers);
    if (chk->parsed()) return run_check(input, layers, out);
    if (swp->parsed())
      return run_sweep_cmd(family, d, seed, parse_sizes(sizes_raw), out,
                           general_position, oracle_directions);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
