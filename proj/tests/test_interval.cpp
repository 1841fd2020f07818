#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "quintic/interval.hpp"
#include "quintic/rng.hpp"
#include "support/oracles.hpp"

using namespace quintic;
using oracle::Rational;

namespace {

// A random interval around a random center, sometimes degenerate,
// sometimes straddling zero.
Interval random_interval(Rng& rng) {
  const double c = rng.normal() * std::pow(10.0, rng.uniform(-6.0, 6.0));
  const double w = std::abs(rng.normal()) * std::pow(10.0, rng.uniform(-12.0, 0.0));
  switch (rng.u64() % 4) {
    case 0: return Interval(c);
    case 1: return Interval(c - w, c + w);
    case 2: return Interval(-w, w);
    default: return Interval(c - w, c + 3.0 * w);
  }
}

double sample_point(Rng& rng, const Interval& v) {
  switch (rng.u64() % 4) {
    case 0: return v.lo;
    case 1: return v.hi;
    case 2: return v.mid();
    default: return v.lo + rng.uniform() * (v.hi - v.lo);
  }
}

bool rational_inside(const Rational& x, const Interval& v) {
  return Rational(v.lo) <= x && x <= Rational(v.hi);
}

}  // namespace

TEST_CASE("interval operations enclose the exact rational results") {
  Rng rng(501);
  const int kOps = 100000;  // the acceptance suite runs the full million
  for (int i = 0; i < kOps; ++i) {
    Interval a = random_interval(rng);
    Interval b = random_interval(rng);
    const double x = sample_point(rng, a);
    const double y = sample_point(rng, b);
    const Rational rx(x), ry(y);
    switch (i % 4) {
      case 0: REQUIRE(rational_inside(rx + ry, a + b)); break;
      case 1: REQUIRE(rational_inside(rx - ry, a - b)); break;
      case 2: REQUIRE(rational_inside(rx * ry, a * b)); break;
      default:
        if (!b.contains_zero()) REQUIRE(rational_inside(rx / ry, a / b));
        break;
    }
  }
}

TEST_CASE("division by a zero-containing interval throws") {
  const Interval a(1.0, 2.0);
  CHECK_THROWS_AS(a / Interval(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(a / Interval(0.0), std::domain_error);
  CHECK_THROWS_AS(a / Interval(0.0, 5.0), std::domain_error);
  CHECK_NOTHROW(a / Interval(1e-300, 1.0));
}

TEST_CASE("squaring is an enclosure and respects the sign") {
  Rng rng(502);
  for (int i = 0; i < 20000; ++i) {
    Interval a = random_interval(rng);
    const double x = sample_point(rng, a);
    const Rational rx(x);
    REQUIRE(rational_inside(rx * rx, sqr(a)));
    CHECK(sqr(a).lo >= 0.0);
  }
}

TEST_CASE("complex multiplication encloses exact rectangle products") {
  Rng rng(503);
  for (int i = 0; i < 20000; ++i) {
    CInterval a(random_interval(rng), random_interval(rng));
    CInterval b(random_interval(rng), random_interval(rng));
    const Rational xr = Rational(sample_point(rng, a.re));
    const Rational xi = Rational(sample_point(rng, a.im));
    const Rational yr = Rational(sample_point(rng, b.re));
    const Rational yi = Rational(sample_point(rng, b.im));
    const CInterval p = a * b;
    REQUIRE(rational_inside(xr * yr - xi * yi, p.re));
    REQUIRE(rational_inside(xr * yi + xi * yr, p.im));
  }
}

TEST_CASE("magnitude bound dominates every point of the rectangle") {
  Rng rng(504);
  for (int i = 0; i < 20000; ++i) {
    CInterval a(random_interval(rng), random_interval(rng));
    const double x = sample_point(rng, a.re);
    const double y = sample_point(rng, a.im);
    CHECK(std::hypot(x, y) <= a.mag());
  }
}

TEST_CASE("containment predicates") {
  const Interval a(1.0, 2.0);
  CHECK(a.strictly_inside(Interval(0.9, 2.1)));
  CHECK_FALSE(a.strictly_inside(Interval(1.0, 2.1)));
  CHECK_FALSE(a.strictly_inside(Interval(1.1, 2.1)));
  CHECK(a.intersects(Interval(2.0, 3.0)));
  CHECK_FALSE(a.intersects(Interval(2.5, 3.0)));
  Interval out;
  CHECK(intersect(a, Interval(1.5, 3.0), out));
  CHECK(out.lo == 1.5);
  CHECK(out.hi == 2.0);
  CHECK_FALSE(intersect(a, Interval(3.0, 4.0), out));
}

TEST_CASE("outward decimal printing preserves the enclosure") {
  Rng rng(505);
  for (int i = 0; i < 2000; ++i) {
    Interval a = random_interval(rng);
    const std::string s = to_string_outward(a);
    double lo, hi;
    REQUIRE(std::sscanf(s.c_str(), "[%lf, %lf]", &lo, &hi) == 2);
    CHECK(lo <= a.lo);
    CHECK(hi >= a.hi);
  }
}

TEST_CASE("conjugation flips the imaginary part exactly") {
  CInterval a(Interval(1.0, 2.0), Interval(-0.5, 3.0));
  CInterval c = a.conj();
  CHECK(c.im.lo == -3.0);
  CHECK(c.im.hi == 0.5);
  CHECK(c.re.lo == 1.0);
}
