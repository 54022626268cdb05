#pragma once

#include <cmath>

namespace sipdg {

/// Point or displacement in the plane.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
/// z-component of the 3D cross product.
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(b - a); }

/// Lexicographic order on (x, y).
constexpr bool lex_less(Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

/// Axis-aligned rectangle [lo.x, hi.x] x [lo.y, hi.y].
struct Rect {
  Vec2 lo{0.0, 0.0};
  Vec2 hi{1.0, 1.0};

  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
  double area() const { return width() * height(); }
  bool valid() const { return width() > 0.0 && height() > 0.0; }

  /// True when p lies on the boundary, up to `tol` scaled by the rectangle size.
  bool on_boundary(Vec2 p, double tol = 1e-12) const;

  static Rect unit_square() { return {{0.0, 0.0}, {1.0, 1.0}}; }
  static Rect biunit_square() { return {{-1.0, -1.0}, {1.0, 1.0}}; }
};

/// Twice the signed area of (a, b, c); positive for counterclockwise order.
constexpr double signed_area2(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

}  // namespace sipdg
