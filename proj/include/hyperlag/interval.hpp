#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyperlag {

// Closed interval with every endpoint pushed one ulp outward after each
// operation, so the true result of the real operation is always enclosed.
struct Interval {
  double lo = 0, hi = 0;

  Interval() = default;
  Interval(double v) : lo(v), hi(v) {}  // NOLINT: exact point
  Interval(double l, double h) : lo(l), hi(h) {}

  static double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
  static double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

  friend Interval operator+(Interval a, Interval b) { return {down(a.lo + b.lo), up(a.hi + b.hi)}; }
  friend Interval operator-(Interval a, Interval b) { return {down(a.lo - b.hi), up(a.hi - b.lo)}; }
  friend Interval operator*(Interval a, Interval b) {
    double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {down(*std::min_element(p, p + 4)), up(*std::max_element(p, p + 4))};
  }
  Interval& operator+=(Interval b) { return *this = *this + b; }
  Interval& operator*=(Interval b) { return *this = *this * b; }

  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return hi - lo; }
};

}  // namespace hyperlag
