#include "sipdg/problems.hpp"

#include <cmath>
#include <numbers>

#include "sipdg/errors.hpp"

namespace sipdg {

ExactSolution sine_problem(const Rect& domain) {
  using std::numbers::pi;
  ExactSolution e;
  e.domain = domain;
  e.u = [](Vec2 p) { return 0.5 * std::sin(pi * p.x) * std::sin(pi * p.y); };
  e.gradient = [](Vec2 p) {
    return Vec2{0.5 * pi * std::cos(pi * p.x) * std::sin(pi * p.y),
                0.5 * pi * std::sin(pi * p.x) * std::cos(pi * p.y)};
  };
  e.hessian = [](Vec2 p) {
    const double sx = std::sin(pi * p.x), sy = std::sin(pi * p.y);
    const double cx = std::cos(pi * p.x), cy = std::cos(pi * p.y);
    const double s = 0.5 * pi * pi;
    return std::array<double, 3>{-s * sx * sy, s * cx * cy, -s * sx * sy};
  };
  e.rhs = [](Vec2 p) { return pi * pi * std::sin(pi * p.x) * std::sin(pi * p.y); };
  // |u|_2^2 = (pi^4/4) int 2 sin^2 sin^2 + 2 cos^2 cos^2 = (pi^4/4) * area on
  // rectangles whose sides span whole periods of sin^2.
  const bool whole_periods = domain.width() == std::round(domain.width()) &&
                             domain.height() == std::round(domain.height());
  if (whole_periods) e.h2_seminorm = 0.5 * pi * pi * std::sqrt(domain.area());
  return e;
}

ExactSolution problem_by_id(std::string_view id) {
  if (id == "unit-sine") {
    ExactSolution e = sine_problem(Rect::unit_square());
    e.name = "unit-sine";
    return e;
  }
  if (id == "biunit-sine") {
    ExactSolution e = sine_problem(Rect::biunit_square());
    e.name = "biunit-sine";
    return e;
  }
  throw InputError("unknown problem id '" + std::string(id) + "'");
}

std::vector<std::string> problem_ids() { return {"unit-sine", "biunit-sine"}; }

ExactSolution linear_field(double c0, double c1, double c2) {
  ExactSolution e;
  e.name = "linear";
  e.u = [=](Vec2 p) { return c0 + c1 * p.x + c2 * p.y; };
  e.gradient = [=](Vec2) { return Vec2{c1, c2}; };
  e.hessian = [](Vec2) { return std::array<double, 3>{0.0, 0.0, 0.0}; };
  e.rhs = [](Vec2) { return 0.0; };
  e.h2_seminorm = 0.0;
  return e;
}

ExactSolution quadratic_x2() {
  ExactSolution e;
  e.name = "x^2";
  e.u = [](Vec2 p) { return p.x * p.x; };
  e.gradient = [](Vec2 p) { return Vec2{2.0 * p.x, 0.0}; };
  e.hessian = [](Vec2) { return std::array<double, 3>{2.0, 0.0, 0.0}; };
  e.rhs = [](Vec2) { return -2.0; };
  return e;
}

ExactSolution zero_field() {
  ExactSolution e = linear_field(0.0, 0.0, 0.0);
  e.name = "zero";
  return e;
}

}  // namespace sipdg
