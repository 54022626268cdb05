#include "sipdg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "sipdg/errors.hpp"

namespace sipdg {
namespace {

// Legendre P_n(z) and P_{n-1}(z) by the three-term recurrence.
std::pair<double, double> legendre(int n, double z) {
  double p0 = 1.0, p1 = z;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

// Nodes and weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [pn, pm] = legendre(n, z);
      const double dz = pn / (n * (z * pn - pm) / (z * z - 1.0));
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const auto [pn, pm] = legendre(n, z);
    const double dp = n * (z * pn - pm) / (z * z - 1.0);
    x[static_cast<std::size_t>(i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

SegmentRule unit_gauss(int n) {
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  SegmentRule rule;
  // ascending order on [0, 1]
  for (std::size_t i = x.size(); i-- > 0;) {
    rule.points.push_back(0.5 * (x[i] + 1.0));
    rule.weights.push_back(0.5 * w[i]);
  }
  return rule;
}

// Conical product (Duffy) rule: (xi, eta) = (u, v (1 - u)).
TriangleRule collapsed_rule(int degree) {
  const SegmentRule ru = unit_gauss((degree + 3) / 2);
  const SegmentRule rv = unit_gauss((degree + 2) / 2);
  TriangleRule rule;
  rule.degree = degree;
  for (std::size_t i = 0; i < ru.size(); ++i) {
    for (std::size_t j = 0; j < rv.size(); ++j) {
      const double u = ru.points[i];
      const double xi = u;
      const double eta = rv.points[j] * (1.0 - u);
      rule.points.push_back({1.0 - xi - eta, xi, eta});
      rule.weights.push_back(2.0 * ru.weights[i] * rv.weights[j] * (1.0 - u));
    }
  }
  return rule;
}

}  // namespace

TriangleRule triangle_rule(int degree) {
  if (degree < 1 || degree > max_triangle_degree) {
    throw InputError("triangle_rule: unsupported degree " + std::to_string(degree));
  }
  TriangleRule rule;
  rule.degree = degree;
  switch (degree) {
    case 1:
      rule.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
      rule.weights = {1.0};
      return rule;
    case 2:
      rule.points = {{2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0},
                     {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0},
                     {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0}};
      rule.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
      return rule;
    case 3:
      rule.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
                     {0.6, 0.2, 0.2},
                     {0.2, 0.6, 0.2},
                     {0.2, 0.2, 0.6}};
      rule.weights = {-27.0 / 48.0, 25.0 / 48.0, 25.0 / 48.0, 25.0 / 48.0};
      return rule;
    default:
      return collapsed_rule(degree);
  }
}

SegmentRule segment_rule(int npoints) {
  if (npoints < 1 || npoints > max_segment_points) {
    throw InputError("segment_rule: unsupported point count " + std::to_string(npoints));
  }
  return unit_gauss(npoints);
}

SegmentRule segment_rule_for_degree(int degree) {
  return segment_rule(std::max(1, (degree + 2) / 2));
}

}  // namespace sipdg
