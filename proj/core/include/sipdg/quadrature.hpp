#pragma once

#include <array>
#include <vector>

#include "sipdg/geometry.hpp"

namespace sipdg {

/// Quadrature on the reference triangle with vertices (0,0), (1,0), (0,1).
/// Points are barycentric (l0, l1, l2) with reference coordinates (l1, l2);
/// weights sum to one, so integrals are |T| * sum_q w_q f(x_q).
struct TriangleRule {
  int degree = 0;
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  Vec2 reference_point(std::size_t q) const { return {points[q][1], points[q][2]}; }
};

/// Gauss-Legendre rule on [0, 1]; weights sum to one.
struct SegmentRule {
  std::vector<double> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  /// Polynomial degree integrated exactly (2n - 1).
  int degree() const { return 2 * static_cast<int>(size()) - 1; }
};

inline constexpr int max_triangle_degree = 10;
inline constexpr int max_segment_points = 10;

/// Rule exact for polynomials up to `degree` in [1, max_triangle_degree].
/// Degree 3 is the classical 4-point rule (centroid weight -27/48).
TriangleRule triangle_rule(int degree);

/// npoints in [1, max_segment_points].
SegmentRule segment_rule(int npoints);

/// Smallest Gauss-Legendre rule exact for the given polynomial degree.
SegmentRule segment_rule_for_degree(int degree);

}  // namespace sipdg
