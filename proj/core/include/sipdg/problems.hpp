#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sipdg/geometry.hpp"

namespace sipdg {

/// Exact solution of -Δu = phi with u = 0 on the boundary of `domain`.
/// hessian returns (u_xx, u_xy, u_yy).
struct ExactSolution {
  std::string name;
  Rect domain;
  std::function<double(Vec2)> u;
  std::function<Vec2(Vec2)> gradient;
  std::function<std::array<double, 3>(Vec2)> hessian;
  std::function<double(Vec2)> rhs;
  std::optional<double> h2_seminorm;  // |u|_{2, domain}, when known in closed form
};

/// u = sin(pi x) sin(pi y) / 2, phi = pi^2 sin(pi x) sin(pi y) on `domain`.
ExactSolution sine_problem(const Rect& domain);

/// Id "unit-sine" on (0,1)^2 or "biunit-sine" on (-1,1)^2.
ExactSolution problem_by_id(std::string_view id);

std::vector<std::string> problem_ids();

/// u(x, y) = c0 + c1 x + c2 y (not zero on the boundary; for reproduction tests).
ExactSolution linear_field(double c0, double c1, double c2);

/// u(x, y) = x^2
ExactSolution quadratic_x2();

/// u = 0
ExactSolution zero_field();

}  // namespace sipdg
