#include <catch2/catch_amalgamated.hpp>

#include "lifthull/geometry.hpp"
#include "lifthull/rng.hpp"

using namespace lifthull;

namespace {

Mat random_matrix(SplitMix64& rng, size_t r, size_t c, long span) {
  Mat m(r, Vec(c));
  for (auto& row : m)
    for (auto& e : row)
      e = Rational(long(rng.bounded(uint64_t(2 * span + 1))) - span,
                   long(rng.bounded(4)) + 1);
  return m;
}

}  // namespace

TEST_CASE("solve recovers known solutions") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    size_t n = 1 + rng.bounded(5);
    Mat a = random_matrix(rng, n, n, 9);
    if (det(a).is_zero()) continue;
    Vec x(n);
    for (auto& e : x) e = Rational(long(rng.bounded(19)) - 9, 2);
    Vec b(n, Rational(0));
    for (size_t i = 0; i < n; ++i) b[i] = dot(a[i], x);
    auto got = solve(a, b);
    REQUIRE(got.has_value());
    CHECK(*got == x);
  }
}

TEST_CASE("solve reports inconsistent systems") {
  Mat a = {{Rational(1), Rational(1)}, {Rational(2), Rational(2)}};
  CHECK_FALSE(solve(a, {Rational(1), Rational(3)}).has_value());
  CHECK(solve(a, {Rational(1), Rational(2)}).has_value());
}

TEST_CASE("invert produces a two-sided inverse") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    size_t n = 1 + rng.bounded(4);
    Mat a = random_matrix(rng, n, n, 7);
    auto inv = invert(a);
    if (det(a).is_zero()) {
      CHECK_FALSE(inv.has_value());
      continue;
    }
    REQUIRE(inv.has_value());
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Rational ij(0);
        for (size_t k = 0; k < n; ++k) ij += a[i][k] * (*inv)[k][j];
        CHECK(ij == (i == j ? Rational(1) : Rational(0)));
      }
  }
}

TEST_CASE("nullspace vectors annihilate the matrix") {
  SplitMix64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    size_t r = 1 + rng.bounded(4), c = 1 + rng.bounded(5);
    Mat a = random_matrix(rng, r, c, 6);
    Mat ker = nullspace(a);
    CHECK(rank(a) + ker.size() == c);
    for (const auto& v : ker) {
      CHECK_FALSE(is_zero_vec(v));
      for (size_t i = 0; i < r; ++i) CHECK(dot(a[i], v).is_zero());
    }
    CHECK(rank(ker) == ker.size());
  }
}

TEST_CASE("determinant multiplies and detects rank deficiency") {
  Mat a = {{Rational(2), Rational(1)}, {Rational(1), Rational(1)}};
  CHECK(det(a) == Rational(1));
  SplitMix64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    size_t n = 1 + rng.bounded(4);
    Mat x = random_matrix(rng, n, n, 5);
    Mat y = random_matrix(rng, n, n, 5);
    Mat xy(n, Vec(n, Rational(0)));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) xy[i][j] += x[i][k] * y[k][j];
    CHECK(det(xy) == det(x) * det(y));
    CHECK((det(x).is_zero()) == (rank(x) < n));
  }
}

TEST_CASE("orient on fixed simplices") {
  CHECK(orient({{Rational(0), Rational(0)},
                {Rational(1), Rational(0)},
                {Rational(0), Rational(1)}}) == 1);
  CHECK(orient({{Rational(0), Rational(0)},
                {Rational(1), Rational(0)},
                {Rational(2), Rational(0)}}) == 0);
  CHECK(orient({{Rational(0), Rational(0), Rational(0)},
                {Rational(1), Rational(0), Rational(0)},
                {Rational(0), Rational(1), Rational(0)},
                {Rational(0), Rational(0), Rational(-1)}}) == -1);
}

TEST_CASE("orient is antisymmetric under swaps") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    size_t d = 2 + rng.bounded(3);
    Mat pts = random_matrix(rng, d + 1, d, 8);
    int base = orient(pts);
    size_t i = rng.bounded(d + 1), j = rng.bounded(d + 1);
    if (i == j) continue;
    std::swap(pts[i], pts[j]);
    CHECK(orient(pts) == -base);
  }
}

TEST_CASE("plane_through orients away from the reference point") {
  Mat pts = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
  auto h = plane_through(pts, {Rational(0), Rational(0)});
  REQUIRE(h.has_value());
  CHECK(h->side({Rational(0), Rational(0)}) < 0);
  CHECK(h->side({Rational(1), Rational(1)}) > 0);
  CHECK(h->side({Rational(1, 2), Rational(1, 2)}) == 0);
  for (const auto& e : h->normal) CHECK(e.is_integer());
}

TEST_CASE("hyperplane canonicalization is scale invariant") {
  SplitMix64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    size_t d = 1 + rng.bounded(4);
    Vec n(d);
    bool all_zero = true;
    for (auto& e : n) {
      e = Rational(long(rng.bounded(13)) - 6, long(rng.bounded(3)) + 1);
      all_zero = all_zero && e.is_zero();
    }
    if (all_zero) continue;
    Rational b(long(rng.bounded(9)) - 4, long(rng.bounded(3)) + 1);
    Hyperplane h1{n, b};
    Rational s(long(rng.bounded(20)) + 1, long(rng.bounded(5)) + 1);
    Hyperplane h2{vec_scale(s, n), s * b};
    h1.canonicalize();
    h2.canonicalize();
    CHECK(h1.normal == h2.normal);
    CHECK(h1.offset == h2.offset);
  }
}
