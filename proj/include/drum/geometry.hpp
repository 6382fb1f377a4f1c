#pragma once

#include <compare>
#include <vector>

#include "drum/rational.hpp"

namespace drum {

/// Planar point over an exact (Rational) or floating (double) scalar.
template <class T>
struct Point2 {
  T x{};
  T y{};

  friend bool operator==(const Point2&, const Point2&) = default;
};

template <class T>
Point2<T> operator+(const Point2<T>& a, const Point2<T>& b) {
  return {a.x + b.x, a.y + b.y};
}
template <class T>
Point2<T> operator-(const Point2<T>& a, const Point2<T>& b) {
  return {a.x - b.x, a.y - b.y};
}
template <class T>
T cross(const Point2<T>& a, const Point2<T>& b) {
  return a.x * b.y - a.y * b.x;
}
template <class T>
T dot(const Point2<T>& a, const Point2<T>& b) {
  return a.x * b.x + a.y * b.y;
}
/// Lexicographic (x, then y).
template <class T>
bool lexLess(const Point2<T>& a, const Point2<T>& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

template <class T>
using Polygon = std::vector<Point2<T>>;

/// Twice the signed area (positive for counterclockwise).
template <class T>
T doubledSignedArea(const Polygon<T>& poly) {
  T sum{};
  for (std::size_t i = 0; i < poly.size(); ++i) {
    sum += cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return sum;
}

template <class T>
T polygonArea(const Polygon<T>& poly) {
  T twice = doubledSignedArea(poly);
  if (twice < 0) twice = -twice;
  return twice / 2;
}

/// x ↦ L·x + t with L orthogonal; `reflections` counts the reflections
/// composed so far (its parity is the sign of det L).
template <class T>
struct Isometry {
  T a{1}, b{0}, c{0}, d{1};  // L = [[a, b], [c, d]]
  T tx{0}, ty{0};
  unsigned reflections = 0;

  Point2<T> apply(const Point2<T>& p) const {
    return {a * p.x + b * p.y + tx, c * p.x + d * p.y + ty};
  }
  bool orientationReversing() const { return reflections % 2 == 1; }

  /// Reflection across the line through p and q (p ≠ q).
  static Isometry reflectionAcross(const Point2<T>& p, const Point2<T>& q) {
    const T dx = q.x - p.x, dy = q.y - p.y;
    const T len2 = dx * dx + dy * dy;
    Isometry r;
    r.a = (dx * dx - dy * dy) / len2;
    r.b = (T(2) * dx * dy) / len2;
    r.c = r.b;
    r.d = (dy * dy - dx * dx) / len2;
    // x' = L(x − p) + p
    r.tx = p.x - (r.a * p.x + r.b * p.y);
    r.ty = p.y - (r.c * p.x + r.d * p.y);
    r.reflections = 1;
    return r;
  }

  /// (this ∘ other)(x) = this(other(x)).
  Isometry after(const Isometry& other) const {
    Isometry r;
    r.a = a * other.a + b * other.c;
    r.b = a * other.b + b * other.d;
    r.c = c * other.a + d * other.c;
    r.d = c * other.b + d * other.d;
    r.tx = a * other.tx + b * other.ty + tx;
    r.ty = c * other.tx + d * other.ty + ty;
    r.reflections = reflections + other.reflections;
    return r;
  }
};

}  // namespace drum
