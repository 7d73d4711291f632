#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "lifthull/io.hpp"
#include "lifthull/sweep.hpp"

using namespace lifthull;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  std::string cmd = std::string(LIFTHULL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  CliRun r;
  char buf[4096];
  size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
  int rc = pclose(p);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string slurp_file(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

// The seconds column is wall time; everything before it must be stable.
std::string strip_seconds(const std::string& csv) {
  std::istringstream is(csv);
  std::ostringstream os;
  std::string line;
  while (std::getline(is, line)) {
    size_t cut = line.rfind(',');
    os << (cut == std::string::npos ? line : line.substr(0, cut)) << '\n';
  }
  return os.str();
}

SweepSpec spec(SweepFamily f, std::vector<std::vector<long>> sched, long d,
               uint64_t seed) {
  SweepSpec s;
  s.family = f;
  s.schedule = std::move(sched);
  s.d = d;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("point sets round trip through the text format") {
  Mat pts = {{q(1, 2), q(-3)}, {q(0), q(7, 5)}, {q(2), q(2)}};
  Mat back = parse_points(points_dump(pts));
  REQUIRE(back == pts);
}

TEST_CASE("point set parser handles comments and rejects malformed input") {
  Mat pts = parse_points(
      "# header comment\n2 2 # dims then count\n1/2 -3\n# row comment\n0 "
      "7/5\n");
  REQUIRE(pts == Mat{{q(1, 2), q(-3)}, {q(0), q(7, 5)}});
  REQUIRE_THROWS_AS(parse_points(""), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_points("2 2\n1 2\n3\n"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_points("x 2\n1 2\n"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_points("0 1\n"), std::invalid_argument);
  REQUIRE_THROWS_AS(points_dump({}), std::invalid_argument);
}

TEST_CASE("emitted instances re-certify from the sphere file alone") {
  LowerBoundInstance inst = lb2_instance(3, 4, 1, 11);
  std::ostringstream os;
  write_spheres(os, inst.spheres);
  std::istringstream is(os.str());
  LowerBoundInstance back = instance_from_spheres(read_spheres(is), {4, 1});
  REQUIRE(back.R == inst.R);
  REQUIRE(back.z1 == inst.z1);
  REQUIRE(back.z2 == inst.z2);
  REQUIRE(back.rho == inst.rho);
  Certificate cert = check_conditions(back);
  REQUIRE(cert.all_pass());
  REQUIRE(cert.records.size() == inst.certificate.records.size());

  SphereSet truncated = inst.spheres;
  truncated.spheres.pop_back();
  REQUIRE_THROWS_AS(instance_from_spheres(truncated, {4, 1}),
                    std::invalid_argument);
}

TEST_CASE("sweep spec validation") {
  REQUIRE_THROWS_AS(run_sweep(spec(SweepFamily::CYCLIC, {}, 4, 1)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(run_sweep(spec(SweepFamily::CYCLIC, {{8}, {6}}, 4, 1)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(run_sweep(spec(SweepFamily::CYCLIC, {{6}, {8}}, 3, 1)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(run_sweep(spec(SweepFamily::LB2, {{4, 1}}, 4, 1)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(run_sweep(spec(SweepFamily::LB2, {{4}}, 3, 1)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(run_sweep(spec(SweepFamily::LBM, {{2, 2}}, 3, 1)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(
      run_sweep(spec(SweepFamily::MINKOWSKI_RANDOM, {{4, 0}}, 3, 1)),
      std::invalid_argument);
  REQUIRE_THROWS_AS(parse_family("nope"), std::invalid_argument);
  REQUIRE(parse_family(family_name(SweepFamily::STACKED_RANDOM)) ==
          SweepFamily::STACKED_RANDOM);
}

TEST_CASE("sweep rows are deterministic for a fixed spec and seed") {
  SweepSpec s = spec(SweepFamily::STACKED_RANDOM, {{4, 4}, {6, 6}, {8, 8}}, 3, 5);
  SweepResult a = run_sweep(s), b = run_sweep(s);
  REQUIRE(sweep_csv(a.rows, false) == sweep_csv(b.rows, false));
  REQUIRE(a.fit.slope == b.fit.slope);
  SweepSpec other = s;
  other.seed = 6;
  REQUIRE(sweep_csv(run_sweep(other).rows, false) != sweep_csv(a.rows, false));
}

TEST_CASE("sweep csv shape") {
  SweepResult r = run_sweep(spec(SweepFamily::CYCLIC, {{6}, {8}}, 4, 1));
  std::string csv = sweep_csv(r.rows, false);
  REQUIRE(csv.rfind("family,d,n_vector,total_faces,counts_json,bound,seconds\n",
                    0) == 0);
  REQUIRE(csv.find("cyclic,4,6,48,\"{\"\"0\"\":6,") != std::string::npos);
  REQUIRE(csv.find(",0.000\n") != std::string::npos);

  SweepResult mk =
      run_sweep(spec(SweepFamily::MINKOWSKI_RANDOM, {{4, 3}, {6, 5}}, 3, 2));
  REQUIRE(sweep_csv(mk.rows).find("minkowski-random,3,4|3,") !=
          std::string::npos);
}

TEST_CASE("probe oracle never exceeds the reported face count") {
  SweepSpec s = spec(SweepFamily::LB2, {{4, 1}, {5, 2}}, 3, 7);
  s.oracle_directions = 64;
  SweepResult r = run_sweep(s);
  for (const auto& row : r.rows) {
    REQUIRE(row.error.empty());
    REQUIRE(row.oracle_faces >= 1);
    REQUIRE(row.oracle_faces <= row.total_faces);
  }
}

TEST_CASE("generator infeasibility is surfaced per row") {
  SweepResult r = run_sweep(spec(SweepFamily::LB2, {{5, 1}, {6, 2}}, 5, 1));
  for (const auto& row : r.rows) {
    REQUIRE_FALSE(row.error.empty());
    REQUIRE(row.total_faces == 0);
  }
  REQUIRE(sweep_csv(r.rows).find("\"{\"\"error\"\":\"\"") != std::string::npos);
  REQUIRE(r.fit.points_used == 0);
}

TEST_CASE("ols fit recovers a quadratic exponent") {
  std::vector<SweepRow> rows;
  for (long n : {4, 8, 16, 32}) {
    SweepRow row;
    row.family = "cyclic";
    row.d = 4;
    row.n = {n};
    row.total_faces = 3 * n * n;
    rows.push_back(row);
  }
  SweepFit fit = fit_rows(rows, SweepFamily::CYCLIC, 4);
  REQUIRE(fit.points_used == 3);  // smallest size dropped
  REQUIRE(fit.slope == Catch::Approx(2.0).margin(1e-9));
  REQUIRE(fit.residual == Catch::Approx(0.0).margin(1e-18));
  REQUIRE(fit.theoretical == 2.0);
}

TEST_CASE("cli generates hulls and certificates end to end") {
  std::string base = "/tmp/lifthull_io_cli";
  CliRun gen = run_cli("gen --family cyclic --dim 4 --sizes 7 --seed 3 --out " +
                       base);
  REQUIRE(gen.status == 0);
  Mat pts = parse_points(slurp_file(base + ".points"));
  REQUIRE(pts.size() == 7);

  CliRun hull_run = run_cli("hull " + base + ".points --out " + base + ".dump");
  REQUIRE(hull_run.status == 0);
  REQUIRE(hull_run.out.find("f_vector=1,7,21,28,14,1") != std::string::npos);
  FaceLattice parsed = parse_lattice_dump(slurp_file(base + ".dump"));
  REQUIRE(f_vector(parsed) == FVector{1, 7, 21, 28, 14, 1});

  CliRun lb2 = run_cli("gen --family lb2 --dim 3 --sizes 4,1 --seed 11 --out " +
                       base);
  REQUIRE(lb2.status == 0);
  REQUIRE(slurp_file(base + ".cert").find("\"all_pass\": true") !=
          std::string::npos);
  CliRun chk = run_cli("check " + base + ".spheres --sizes 4,1");
  REQUIRE(chk.status == 0);
  REQUIRE(chk.out.find("\"all_pass\": true") != std::string::npos);

  CliRun sph = run_cli("spherehull " + base + ".spheres");
  REQUIRE(sph.status == 0);
  REQUIRE(sph.out.rfind("circularity,count\n", 0) == 0);
  REQUIRE(sph.out.find("#witnesses") != std::string::npos);
}

TEST_CASE("cli weighted sum agrees with its oracle") {
  std::string base = "/tmp/lifthull_io_mk";
  REQUIRE(run_cli("gen --family minkowski-random --dim 3 --sizes 5,4 --seed 9 "
                  "--out " + base).status == 0);
  CliRun primary =
      run_cli("minksum " + base + ".P.points " + base + ".Q.points");
  CliRun oracle = run_cli("minksum " + base + ".P.points " + base +
                          ".Q.points --oracle");
  REQUIRE(primary.status == 0);
  REQUIRE(primary.out == oracle.out);
  REQUIRE_FALSE(primary.out.empty());
}

TEST_CASE("cli sweep is reproducible modulo the timing column") {
  std::string args =
      "sweep --family lbm --dim 3 --sizes \"2,2,2;3,2,2\" --seed 4";
  CliRun a = run_cli(args), b = run_cli(args);
  REQUIRE(a.status == 0);
  REQUIRE(strip_seconds(a.out) == strip_seconds(b.out));
  REQUIRE(a.out.rfind("family,d,n_vector,", 0) == 0);
  REQUIRE(a.out.find("lbm,3,2|2|2,") != std::string::npos);

  CliRun bad = run_cli("sweep --family lb2 --dim 4 --sizes 4,1");
  REQUIRE(bad.status == 1);
}
