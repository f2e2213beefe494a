#ifndef LOJET_INTERVAL_HPP
#define LOJET_INTERVAL_HPP

#include <algorithm>
#include <cmath>
#include <limits>

#include "lojet/errors.hpp"

namespace lojet {

// Closed interval with outward rounding: every arithmetic result is widened
// by one ulp per endpoint, so enclosures stay sound under IEEE rounding.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double l, double h) : lo(l), hi(h) {}
  static Interval point(double v) { return {v, v}; }

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

inline double down(double v) {
  return std::nextafter(v, -std::numeric_limits<double>::infinity());
}
inline double up(double v) {
  return std::nextafter(v, std::numeric_limits<double>::infinity());
}

inline Interval operator+(const Interval& a, const Interval& b) {
  return {down(a.lo + b.lo), up(a.hi + b.hi)};
}
inline Interval operator-(const Interval& a, const Interval& b) {
  return {down(a.lo - b.hi), up(a.hi - b.lo)};
}
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator*(const Interval& a, const Interval& b) {
  const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {down(std::min({p1, p2, p3, p4})), up(std::max({p1, p2, p3, p4}))};
}

inline Interval operator*(double s, const Interval& a) { return Interval::point(s) * a; }

// Division requires 0 outside the denominator.
inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains(0.0)) throw EvalError("interval division by interval containing zero");
  const double p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
  return {down(std::min({p1, p2, p3, p4})), up(std::max({p1, p2, p3, p4}))};
}

inline Interval pow_int(const Interval& a, int k) {
  if (k == 0) return Interval::point(1.0);
  if (k % 2 == 0 && a.contains(0.0)) {
    // Even power over an interval straddling zero attains 0.
    const double m = std::max(std::abs(a.lo), std::abs(a.hi));
    double hi = 1.0;
    for (int i = 0; i < k; ++i) hi = up(hi * m);
    return {0.0, hi};
  }
  Interval out = a;
  for (int i = 1; i < k; ++i) out = out * a;
  return out;
}

inline Interval sqrt(const Interval& a) {
  if (a.lo < 0.0) throw EvalError("interval sqrt of negative values");
  return {down(std::sqrt(a.lo)), up(std::sqrt(a.hi))};
}

inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline Interval intersect_clip(const Interval& a, double lo, double hi) {
  return {std::max(a.lo, lo), std::min(a.hi, hi)};
}

}  // namespace lojet

#endif  // LOJET_INTERVAL_HPP
