#include "sipdg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sipdg/errors.hpp"

namespace sipdg {

std::string_view to_string(QuadratureMode m) { return m == QuadratureMode::four_point ? "four-point" : "exact"; }

QuadratureMode parse_quadrature_mode(std::string_view s) {
  if (s == "four-point") return QuadratureMode::four_point;
  if (s == "exact") return QuadratureMode::exact;
  throw InputError("unknown quadrature mode '" + std::string(s) + "' (expected four-point or exact)");
}

ErrorQuadrature ErrorQuadrature::for_mode(QuadratureMode mode, int k) {
  const int degree = std::max(2 * k + 2, 3);
  ErrorQuadrature q;
  q.volume = triangle_rule(mode == QuadratureMode::four_point ? 3 : degree);
  q.facet = segment_rule_for_degree(degree);
  return q;
}

ErrorQuadrature ErrorQuadrature::with_degree(int degree) {
  return {triangle_rule(degree), segment_rule_for_degree(degree)};
}

ErrorReport error_norms(const Mesh& mesh, const FacetTopology& topo, const DofMap& dofs,
                        std::span<const double> uh, const ExactSolution& exact,
                        const SchemeConfig& config, const ErrorQuadrature& quad) {
  config.validate();
  if (uh.size() != dofs.size()) throw InputError("error_norms: coefficient size mismatch");

  double l2 = 0.0, h1 = 0.0;
  const TriangleRule& rule = quad.volume;
  for (std::size_t t = 0; t < mesh.num_elements(); ++t) {
    const AffineMap map = element_map(mesh, t);
    const double area = 0.5 * map.det;
    double el2 = 0.0, eh1 = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec2 ref = rule.reference_point(q);
      const Vec2 x = map.to_physical(ref);
      const LocalValue v = eval_local(dofs, uh, t, map, ref);
      const double e = exact.u(x) - v.value;
      const Vec2 ge = exact.gradient(x) - v.gradient;
      el2 += rule.weights[q] * e * e;
      eh1 += rule.weights[q] * dot(ge, ge);
    }
    l2 += area * el2;
    h1 += area * eh1;
  }

  double pen = 0.0, flux = 0.0;
  const SegmentRule& srule = quad.facet;
  for (std::size_t f = 0; f < topo.size(); ++f) {
    const TraceFrame frame = facet_trace_frame(mesh, topo, f);
    const double weight = facet_penalty_weight(mesh, topo, f, config.variant);
    double jump2 = 0.0, flux2 = 0.0;
    for (std::size_t q = 0; q < srule.size(); ++q) {
      const double t = srule.points[q];
      const Vec2 x = frame.point(t);
      const double u = exact.u(x);
      const double dnu = dot(exact.gradient(x), frame.normal);
      const TraceSide& s1 = frame.sides[0];
      const LocalValue v1 = eval_local(dofs, uh, s1.element, s1.map, s1.reference_at(t));
      double jump = u - v1.value;
      double mean_flux = dnu - dot(v1.gradient, frame.normal);
      if (frame.interior) {
        const TraceSide& s2 = frame.sides[1];
        const LocalValue v2 = eval_local(dofs, uh, s2.element, s2.map, s2.reference_at(t));
        jump -= u - v2.value;
        mean_flux = 0.5 * (mean_flux + dnu - dot(v2.gradient, frame.normal));
      }
      jump2 += srule.weights[q] * jump * jump;
      flux2 += srule.weights[q] * mean_flux * mean_flux;
    }
    pen += config.eta * weight * frame.length * jump2;
    flux += frame.length * flux2 / (config.eta * weight);
  }

  ErrorReport r;
  r.l2 = std::sqrt(l2);
  r.broken_h1 = std::sqrt(h1);
  r.penalty = std::sqrt(pen);
  r.dg = std::sqrt(h1 + pen);
  r.dg_star = std::sqrt(h1 + pen + flux);
  return r;
}

std::vector<double> consistency_residual(const Mesh& mesh, const FacetTopology& topo,
                                         const DofMap& dofs, const ExactSolution& exact,
                                         const SchemeConfig& config, const ErrorQuadrature& quad) {
  config.validate();
  const int k = dofs.degree;
  std::vector<double> res(dofs.size(), 0.0);

  const TriangleRule& rule = quad.volume;
  for (std::size_t t = 0; t < mesh.num_elements(); ++t) {
    const AffineMap map = element_map(mesh, t);
    const double area = 0.5 * map.det;
    const std::size_t base = dofs.first(t);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec2 ref = rule.reference_point(q);
      const Vec2 x = map.to_physical(ref);
      const BasisEval be = eval_basis_physical(k, map, ref);
      const Vec2 gu = exact.gradient(x);
      const double phi = exact.rhs(x);
      const double w = area * rule.weights[q];
      for (std::size_t i = 0; i < be.count; ++i)
        res[base + i] += w * (dot(gu, be.gradients[i]) - phi * be.values[i]);
    }
  }

  const SegmentRule& srule = quad.facet;
  for (std::size_t f = 0; f < topo.size(); ++f) {
    const TraceFrame frame = facet_trace_frame(mesh, topo, f);
    const double coef = config.eta * facet_penalty_weight(mesh, topo, f, config.variant);
    const double mean_factor = frame.interior ? 0.5 : 1.0;
    const int sides = frame.interior ? 2 : 1;
    for (std::size_t q = 0; q < srule.size(); ++q) {
      const double t = srule.points[q];
      const Vec2 x = frame.point(t);
      const double dnu = dot(exact.gradient(x), frame.normal);
      // [u] vanishes inside the domain; on the boundary it is the trace of u.
      const double ujump = frame.interior ? 0.0 : exact.u(x);
      const double w = frame.length * srule.weights[q];
      for (int s = 0; s < sides; ++s) {
        const TraceSide& side = frame.sides[static_cast<std::size_t>(s)];
        const double sign = s == 0 ? 1.0 : -1.0;
        const BasisEval be = eval_basis_physical(k, side.map, side.reference_at(t));
        const std::size_t base = dofs.first(side.element);
        for (std::size_t i = 0; i < be.count; ++i) {
          const double jump_i = sign * be.values[i];
          const double flux_i = mean_factor * dot(be.gradients[i], frame.normal);
          res[base + i] += w * (-dnu * jump_i - flux_i * ujump + coef * ujump * jump_i);
        }
      }
    }
  }
  return res;
}

std::vector<double> lagrange_interpolate(const Mesh& mesh, const DofMap& dofs,
                                         const ExactSolution& exact) {
  const std::vector<Vec2> nodes = lagrange_nodes(dofs.degree);
  std::vector<double> coeffs(dofs.size());
  for (std::size_t t = 0; t < mesh.num_elements(); ++t) {
    const auto [a, b, c] = mesh.corners(t);
    const std::size_t base = dofs.first(t);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Vec2 xi = nodes[i];
      const Vec2 x = (1.0 - xi.x - xi.y) * a + xi.x * b + xi.y * c;
      coeffs[base + i] = exact.u(x);
    }
  }
  return coeffs;
}

double interpolation_bound_check(const Mesh& mesh, const ExactSolution& exact) {
  if (!exact.hessian) throw InputError("interpolation_bound_check: second derivatives required");
  const TriangleRule rule = triangle_rule(8);
  double worst = 0.0;
  for (std::size_t t = 0; t < mesh.num_elements(); ++t) {
    const AffineMap map = element_map(mesh, t);
    const auto [a, b, c] = mesh.corners(t);
    const double ua = exact.u(a), ub = exact.u(b), uc = exact.u(c);
    const Vec2 grad_interp = map.physical_gradient({ub - ua, uc - ua});
    double err = 0.0, semi = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Vec2 x = map.to_physical(rule.reference_point(q));
      const Vec2 d = exact.gradient(x) - grad_interp;
      const auto hs = exact.hessian(x);
      err += rule.weights[q] * dot(d, d);
      semi += rule.weights[q] * (hs[0] * hs[0] + 2.0 * hs[1] * hs[1] + hs[2] * hs[2]);
    }
    if (semi <= 0.0) continue;
    const double R = element_metrics(mesh, t).circumradius;
    worst = std::max(worst, std::sqrt(err / semi) / R);
  }
  return worst;
}

double observed_order(std::span<const std::pair<double, double>> rows) {
  if (rows.size() < 3) throw InputError("observed_order: at least three rows are required");
  double sx = 0.0, sy = 0.0;
  for (const auto& [p, e] : rows) {
    if (!(p > 0.0) || !(e > 0.0)) throw InputError("observed_order: entries must be positive");
    sx += std::log(p);
    sy += std::log(e);
  }
  const double n = static_cast<double>(rows.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [p, e] : rows) {
    const double dx = std::log(p) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(e) - my);
  }
  if (sxx == 0.0) throw InputError("observed_order: parameters must not all coincide");
  return sxy / sxx;
}

double l2_ratio_check(std::span<const L2RatioRow> rows) {
  if (rows.empty()) throw InputError("l2_ratio_check: no rows");
  double worst = 0.0;
  for (const L2RatioRow& r : rows) {
    if (!(r.R > 0.0) || !(r.dg_star > 0.0)) {
      throw InputError("l2_ratio_check: R and DG* must be positive");
    }
    worst = std::max(worst, r.l2 / (r.R * r.dg_star));
  }
  return worst;
}

}  // namespace sipdg
