#include <catch2/catch_amalgamated.hpp>

#include "lifthull/lp.hpp"
#include "lifthull/qp.hpp"
#include "lifthull/rng.hpp"

using namespace lifthull;

namespace {

// Halfspace demanding normal.x > offset.
Hyperplane want_above(Vec n, Rational b) { return Hyperplane{std::move(n), std::move(b)}; }

Rational qp_value(const Mat& u, const std::vector<Rational>& lambda) {
  Vec y(u[0].size(), Rational(0));
  for (size_t j = 0; j < u.size(); ++j)
    y = vec_add(y, vec_scale(lambda[j], u[j]));
  return norm_sq(y);
}

}  // namespace

TEST_CASE("open triangle has a strict interior point") {
  std::vector<Hyperplane> sys = {
      want_above({Rational(1), Rational(0)}, Rational(0)),   // x > 0
      want_above({Rational(0), Rational(1)}, Rational(0)),   // y > 0
      want_above({Rational(-1), Rational(-1)}, Rational(-1)),  // x+y < 1
  };
  auto p = lp_interior_point(sys);
  REQUIRE(p.has_value());
  for (const auto& h : sys) CHECK(h.side(*p) > 0);
}

TEST_CASE("contradictory system is infeasible") {
  std::vector<Hyperplane> sys = {
      want_above({Rational(1)}, Rational(0)),    // x > 0
      want_above({Rational(-1)}, Rational(0)),   // x < 0
  };
  CHECK_FALSE(lp_interior_point(sys).has_value());
}

TEST_CASE("closed-but-not-open system is infeasible") {
  // x >= 0 and x <= 0 meet only at the point x = 0; no strict interior.
  std::vector<Hyperplane> sys = {
      want_above({Rational(1), Rational(0)}, Rational(0)),
      want_above({Rational(-1), Rational(0)}, Rational(0)),
      want_above({Rational(0), Rational(1)}, Rational(-1)),
  };
  CHECK_FALSE(lp_interior_point(sys).has_value());
}

TEST_CASE("shrunk cube system yields an interior point with positive slacks") {
  std::vector<Hyperplane> sys;
  for (size_t axis = 0; axis < 3; ++axis) {
    Vec plus(3, Rational(0)), minus(3, Rational(0));
    plus[axis] = Rational(1);
    minus[axis] = Rational(-1);
    sys.push_back(want_above(plus, Rational(-9, 10)));   // x_i > -9/10
    sys.push_back(want_above(minus, Rational(-9, 10)));  // x_i <  9/10
  }
  auto p = lp_interior_point(sys);
  REQUIRE(p.has_value());
  for (const auto& h : sys) CHECK((dot(h.normal, *p) - h.offset).sign() > 0);
}

TEST_CASE("random systems around a planted interior point are feasible") {
  SplitMix64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    size_t d = 1 + rng.bounded(4);
    Point center(d);
    for (auto& e : center)
      e = Rational(long(rng.bounded(21)) - 10, long(rng.bounded(4)) + 1);
    std::vector<Hyperplane> sys;
    size_t m = 1 + rng.bounded(8);
    for (size_t i = 0; i < m; ++i) {
      Vec n(d);
      bool zero = true;
      for (auto& e : n) {
        e = Rational(long(rng.bounded(11)) - 5);
        zero = zero && e.is_zero();
      }
      if (zero) n[rng.bounded(d)] = Rational(1);
      // normal.center > offset with strict room.
      Rational off = dot(n, center) - Rational(long(rng.bounded(5)) + 1, 3);
      sys.push_back(want_above(std::move(n), std::move(off)));
    }
    auto p = lp_interior_point(sys);
    REQUIRE(p.has_value());
    for (const auto& h : sys) CHECK(h.side(*p) > 0);
  }
}

TEST_CASE("qp single ray") {
  auto r = min_norm_qp({{Rational(1)}}, {Rational(1)});
  REQUIRE(r.has_value());
  CHECK(r->min_sq == Rational(1));
  CHECK(r->lambda == std::vector<Rational>{Rational(1)});
}

TEST_CASE("qp symmetric cancellation") {
  auto r = min_norm_qp({{Rational(1)}, {Rational(-1)}},
                       {Rational(1), Rational(1)});
  REQUIRE(r.has_value());
  CHECK(r->min_sq == Rational(0));
  CHECK(r->lambda == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("qp two orthogonal generators") {
  Mat u = {{Rational(2), Rational(0)}, {Rational(0), Rational(2)}};
  std::vector<Rational> t = {Rational(1), Rational(1)};
  auto r = min_norm_qp(u, t);
  REQUIRE(r.has_value());
  // Brute force over the three active sets: {1}: y=(2,0) sq 4; {2}: y=(0,2)
  // sq 4; {1,2}: lambda=(1/2,1/2), y=(1,1), sq 2.
  CHECK(r->min_sq == Rational(2));
  CHECK(r->lambda == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("qp infeasible when no positive height exists") {
  CHECK_FALSE(min_norm_qp({{Rational(1)}, {Rational(2)}},
                          {Rational(0), Rational(-1)})
                  .has_value());
}

TEST_CASE("qp beats every dense grid point and satisfies KKT") {
  SplitMix64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    size_t n = 1 + rng.bounded(3);
    size_t d = 1 + rng.bounded(3);
    Mat u(n, Vec(d));
    std::vector<Rational> t(n);
    bool feasible = false;
    for (size_t j = 0; j < n; ++j) {
      for (auto& e : u[j]) e = Rational(long(rng.bounded(13)) - 6, 2);
      t[j] = Rational(long(rng.bounded(7)) - 2);
      feasible = feasible || t[j].sign() > 0;
    }
    auto r = min_norm_qp(u, t);
    REQUIRE(r.has_value() == feasible);
    if (!feasible) continue;

    // Witness is feasible and attains the reported value.
    Rational total(0);
    for (size_t j = 0; j < n; ++j) {
      CHECK(r->lambda[j].sign() >= 0);
      total += r->lambda[j] * t[j];
    }
    CHECK(total == Rational(1));
    CHECK(qp_value(u, r->lambda) == r->min_sq);

    // Exact KKT at the witness.
    Vec y = r->y;
    for (size_t j = 0; j < n; ++j) {
      Rational nu = Rational(2) * dot(u[j], y) - r->mu * t[j];
      CHECK(nu.sign() >= 0);
      CHECK((nu * r->lambda[j]).is_zero());
    }

    // No feasible grid point does better. Grid: lambda_j = k_j/G over the
    // first n-1 coordinates, last coordinate solved from the constraint when
    // possible; plus axis-aligned feasible singletons.
    const long G = 8;
    std::vector<long> k(n, 0);
    auto eval_grid = [&](const std::vector<Rational>& lam) {
      for (const auto& l : lam)
        if (l.sign() < 0) return;
      Rational tt(0);
      for (size_t j = 0; j < n; ++j) tt += lam[j] * t[j];
      if (tt != Rational(1)) return;
      CHECK(qp_value(u, lam) >= r->min_sq);
    };
    if (n == 1) {
      if (t[0].sign() > 0) eval_grid({Rational(1) / t[0]});
    } else {
      std::vector<long> idx(n - 1, 0);
      while (true) {
        std::vector<Rational> lam(n, Rational(0));
        Rational partial(0);
        for (size_t j = 0; j + 1 < n; ++j) {
          lam[j] = Rational(idx[j], G);
          partial += lam[j] * t[j];
        }
        if (!t[n - 1].is_zero()) {
          lam[n - 1] = (Rational(1) - partial) / t[n - 1];
          eval_grid(lam);
        } else if (partial == Rational(1)) {
          eval_grid(lam);
        }
        size_t c = 0;
        while (c < idx.size() && ++idx[c] > 3 * G) idx[c++] = 0;
        if (c == idx.size()) break;
      }
    }
  }
}
