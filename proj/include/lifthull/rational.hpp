#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lifthull {

using Int = mpz_class;

// Exact rational number. Invariant: always canonical (gcd(num, den) = 1,
// den > 0), maintained by mpq_class. gmpxx expression templates are
// materialized at every boundary so callers never hold a lazy expression.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}        // NOLINT: implicit by design
  Rational(int n) : v_(n) {}         // NOLINT
  Rational(const Int& n) : v_(n) {}  // NOLINT
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    v_.canonicalize();
  }
  Rational(const Int& num, const Int& den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) {}

  // Parses "p" or "p/q" with optional sign, base 10.
  static Rational parse(const std::string& s) {
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0)
      throw std::invalid_argument("rational: cannot parse '" + s + "'");
    if (q.get_den() == 0)
      throw std::invalid_argument("rational: zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(q);
  }

  Int num() const { return v_.get_num(); }
  Int den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_str();
  }

  double to_double() const { return v_.get_d(); }

  // floor(x) as an exact integer.
  Int floor() const {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(),
               v_.get_den().get_mpz_t());
    return q;
  }

  // Largest bit size among |num| and den; coordinate-growth diagnostics.
  size_t bit_size() const {
    size_t a = mpz_sizeinbase(v_.get_num().get_mpz_t(), 2);
    size_t b = mpz_sizeinbase(v_.get_den().get_mpz_t(), 2);
    return a > b ? a : b;
  }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("rational: divide by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) < 0;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

 private:
  mpq_class v_;
};

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

inline Rational min(const Rational& a, const Rational& b) {
  return a < b ? a : b;
}
inline Rational max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Simplest rational strictly inside (lo, hi): minimal denominator, found by
// continued-fraction descent. Each recursive step strips the integer part of
// lo, so depth is the length of lo's continued fraction.
inline Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi))
    throw std::invalid_argument("simplest_between: empty interval");
  if (lo.sign() < 0 && hi.sign() > 0) return Rational(0);
  if (hi.sign() <= 0) return -simplest_between(-hi, -lo);
  // 0 <= lo < hi.
  Int ip = lo.floor();
  Int next = Int(ip + 1);
  if (Rational(next) < hi) return Rational(next);
  Rational flo = lo - Rational(ip);  // in [0, 1)
  Rational fhi = hi - Rational(ip);  // in (flo, 1], since ip + 1 >= hi
  if (flo.is_zero()) {
    // (0, fhi): the simplest fraction below fhi is 1/n for minimal n.
    Int n = fhi.den() / fhi.num() + 1;
    return Rational(ip) + Rational(Int(1), n);
  }
  // x in (lo, hi) iff x = ip + 1/y with y in (1/fhi, 1/flo).
  return Rational(ip) +
         Rational(1) / simplest_between(Rational(1) / fhi, Rational(1) / flo);
}

// Simplest positive rational r with lo_sq < r*r < hi_sq. Stern-Brocot walk
// comparing squares; runs of same-direction steps are accelerated by
// doubling + binary search so each continued-fraction term costs O(log).
inline Rational rational_sqrt_between(const Rational& lo_sq,
                                      const Rational& hi_sq) {
  if (lo_sq.sign() < 0 || !(lo_sq < hi_sq))
    throw std::invalid_argument("rational_sqrt_between: bad interval");
  Int a = 0, b = 1, c = 1, d = 0;  // frontier (a/b, c/d), c/d = +infinity
  auto sq_of = [](const Int& n, const Int& m) {
    return Rational(n * n, m * m);
  };
  for (int iter = 0; iter < 1000000; ++iter) {
    Int mn = a + c, md = b + d;
    Rational m2 = sq_of(mn, md);
    if (m2 > lo_sq && m2 < hi_sq) return Rational(mn, md);
    if (m2 <= lo_sq) {
      // Go right: largest k >= 1 with ((a+kc)/(b+kd))^2 <= lo_sq.
      Int k = 1;
      while (sq_of(a + 2 * k * c, b + 2 * k * d) <= lo_sq) k *= 2;
      Int lo_k = k, hi_k = 2 * k;  // lo_k ok, hi_k not ok
      while (hi_k - lo_k > 1) {
        Int mid = (lo_k + hi_k) / 2;
        (sq_of(a + mid * c, b + mid * d) <= lo_sq ? lo_k : hi_k) = mid;
      }
      a += lo_k * c;
      b += lo_k * d;
    } else {
      // Go left: largest k >= 1 with ((ka+c)/(kb+d))^2 >= hi_sq. Works for
      // d == 0 too: (ka+c)/(kb) decreases toward a/b whose square is below
      // hi_sq, so the doubling loop terminates.
      Int k = 1;
      while (sq_of(2 * k * a + c, 2 * k * b + d) >= hi_sq) k *= 2;
      Int lo_k = k, hi_k = 2 * k;
      while (hi_k - lo_k > 1) {
        Int mid = (lo_k + hi_k) / 2;
        (sq_of(mid * a + c, mid * b + d) >= hi_sq ? lo_k : hi_k) = mid;
      }
      c += lo_k * a;
      d += lo_k * b;
    }
  }
  throw std::runtime_error("rational_sqrt_between: did not converge");
}

}  // namespace lifthull
