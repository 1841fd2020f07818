// Interval arithmetic with outward rounding, plus rectangular complex
// intervals. Outward rounding is done by widening every computed endpoint by
// one ulp with nextafter instead of switching the FPU rounding mode; this is
// thread safe and costs one representable step of slack per operation.
// Division by an interval containing zero throws.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace quintic {

namespace rnd {
inline double down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}
}  // namespace rnd

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  explicit Interval(double point) : lo(point), hi(point) {}
  Interval(double l, double h) : lo(l), hi(h) {
    if (!(lo <= hi)) throw std::invalid_argument("Interval: lo > hi");
  }

  static Interval unchecked(double l, double h) {
    Interval r;
    r.lo = l;
    r.hi = h;
    return r;
  }

  double mid() const {
    const double m = 0.5 * (lo + hi);
    return std::min(std::max(m, lo), hi);
  }
  double rad() const { return rnd::up(std::max(hi - mid(), mid() - lo)); }
  double width() const { return hi - lo; }
  double mag() const { return std::max(std::abs(lo), std::abs(hi)); }

  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
  bool strictly_inside(const Interval& o) const { return o.lo < lo && hi < o.hi; }
  bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }
};

inline Interval operator+(const Interval& a, const Interval& b) {
  return Interval::unchecked(rnd::down(a.lo + b.lo), rnd::up(a.hi + b.hi));
}

inline Interval operator-(const Interval& a, const Interval& b) {
  return Interval::unchecked(rnd::down(a.lo - b.hi), rnd::up(a.hi - b.lo));
}

inline Interval operator-(const Interval& a) {
  return Interval::unchecked(-a.hi, -a.lo);
}

inline Interval operator*(const Interval& a, const Interval& b) {
  const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo,
               p4 = a.hi * b.hi;
  return Interval::unchecked(rnd::down(std::min(std::min(p1, p2), std::min(p3, p4))),
                             rnd::up(std::max(std::max(p1, p2), std::max(p3, p4))));
}

inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero())
    throw std::domain_error("Interval: division by interval containing zero");
  const double p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo,
               p4 = a.hi / b.hi;
  return Interval::unchecked(rnd::down(std::min(std::min(p1, p2), std::min(p3, p4))),
                             rnd::up(std::max(std::max(p1, p2), std::max(p3, p4))));
}

inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }

// x^2 without the dependency pessimism of x*x.
inline Interval sqr(const Interval& a) {
  const double l = a.lo * a.lo, h = a.hi * a.hi;
  if (a.contains_zero())
    return Interval::unchecked(0.0, rnd::up(std::max(l, h)));
  return Interval::unchecked(rnd::down(std::min(l, h)), rnd::up(std::max(l, h)));
}

inline Interval hull(const Interval& a, const Interval& b) {
  return Interval::unchecked(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

// Intersection; returns false if the intervals are disjoint.
inline bool intersect(const Interval& a, const Interval& b, Interval& out) {
  const double l = std::max(a.lo, b.lo);
  const double h = std::min(a.hi, b.hi);
  if (l > h) return false;
  out = Interval::unchecked(l, h);
  return true;
}

// Rectangular complex interval.
struct CInterval {
  Interval re, im;

  CInterval() = default;
  explicit CInterval(std::complex<double> point)
      : re(point.real()), im(point.imag()) {}
  CInterval(Interval r, Interval i) : re(r), im(i) {}

  std::complex<double> mid() const { return {re.mid(), im.mid()}; }
  bool contains(std::complex<double> z) const {
    return re.contains(z.real()) && im.contains(z.imag());
  }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  bool strictly_inside(const CInterval& o) const {
    return re.strictly_inside(o.re) && im.strictly_inside(o.im);
  }
  bool intersects(const CInterval& o) const {
    return re.intersects(o.re) && im.intersects(o.im);
  }
  CInterval conj() const { return {re, -im}; }
  bool finite() const { return re.finite() && im.finite(); }

  // Upper bound on |z| over the rectangle.
  double mag() const {
    const double r = re.mag(), i = im.mag();
    return rnd::up(std::sqrt(rnd::up(rnd::up(r * r) + rnd::up(i * i))));
  }
};

inline CInterval operator+(const CInterval& a, const CInterval& b) {
  return {a.re + b.re, a.im + b.im};
}
inline CInterval operator-(const CInterval& a, const CInterval& b) {
  return {a.re - b.re, a.im - b.im};
}
inline CInterval operator-(const CInterval& a) { return {-a.re, -a.im}; }
inline CInterval operator*(const CInterval& a, const CInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CInterval operator*(double a, const CInterval& b) {
  const Interval s(a);
  return {s * b.re, s * b.im};
}
inline CInterval operator*(const CInterval& a, double b) { return b * a; }
inline CInterval operator*(std::complex<double> a, const CInterval& b) {
  return CInterval(a) * b;
}
inline CInterval operator+(const CInterval& a, std::complex<double> b) {
  return a + CInterval(b);
}
inline CInterval operator-(const CInterval& a, std::complex<double> b) {
  return a - CInterval(b);
}
inline CInterval operator-(std::complex<double> a, const CInterval& b) {
  return CInterval(a) - b;
}

inline bool intersect(const CInterval& a, const CInterval& b, CInterval& out) {
  return intersect(a.re, b.re, out.re) && intersect(a.im, b.im, out.im);
}

// Decimal rendering that keeps the enclosure: the printed lower endpoint
// parses to a double <= lo, the upper to one >= hi.
std::string to_string_outward(const Interval& v);

}  // namespace quintic
