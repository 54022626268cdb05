#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sipdg/assembly.hpp"
#include "sipdg/dg_space.hpp"
#include "sipdg/problems.hpp"
#include "sipdg/quadrature.hpp"

namespace sipdg {

/// four_point: 4-point degree-3 triangle rule for error integrals.
/// exact: degree max(2k + 2, 3).
enum class QuadratureMode { four_point, exact };

std::string_view to_string(QuadratureMode m);
QuadratureMode parse_quadrature_mode(std::string_view s);

struct ErrorQuadrature {
  TriangleRule volume;
  SegmentRule facet;

  static ErrorQuadrature for_mode(QuadratureMode mode, int k);
  static ErrorQuadrature with_degree(int degree);
};

/// Norms of e = u - u_h. dg^2 = broken_h1^2 + penalty^2 and dg_star^2 adds
/// eta^{-1} sum_f weight_f^{-1} ||{grad e}.n_f||_f^2.
struct ErrorReport {
  double l2 = 0.0;
  double broken_h1 = 0.0;
  double penalty = 0.0;
  double dg = 0.0;
  double dg_star = 0.0;
};

ErrorReport error_norms(const Mesh& mesh, const FacetTopology& topo, const DofMap& dofs,
                        std::span<const double> uh, const ExactSolution& exact,
                        const SchemeConfig& config, const ErrorQuadrature& quad);

/// r_i = a_h(u, psi_i) - (phi, psi_i) for the exact solution u and every
/// basis function psi_i, with u, its traces and normal derivatives evaluated
/// analytically. Vanishes up to quadrature error for a consistent scheme.
std::vector<double> consistency_residual(const Mesh& mesh, const FacetTopology& topo,
                                         const DofMap& dofs, const ExactSolution& exact,
                                         const SchemeConfig& config, const ErrorQuadrature& quad);

/// Element-wise nodal interpolation; nodes on shared edges coincide, so the
/// interpolant of a continuous function has no jumps.
std::vector<double> lagrange_interpolate(const Mesh& mesh, const DofMap& dofs,
                                         const ExactSolution& exact);

/// Result of the randomized trace-inequality oracle.
struct TraceConstantEstimate {
  int degree = 0;
  std::size_t trials = 0;
  double max_ratio = 0.0;  // max ||p||_f (|T|/|f|)^{1/2} / ||p||_T
  double bound = 0.0;      // sqrt((j + 1)(j + 2) / 2)
};

/// Largest value of ||p||_f (|T| / |f|)^{1/2} / ||p||_T over p in P_j for
/// one triangle and its edge `edge` (joining local vertices edge, edge+1).
/// Computed as a generalized symmetric eigenvalue of the facet and element
/// mass matrices.
double trace_ratio_max(Vec2 a, Vec2 b, Vec2 c, int edge, int j);

/// Same for ||grad p . n||_f (|T| / |f|)^{1/2} / ||grad p||_T over p in P_k.
double normal_trace_ratio_max(Vec2 a, Vec2 b, Vec2 c, int edge, int k);

/// trials >= 100 random triangles with aspect ratios log-uniform in [1, 1e4] and angles
/// down to 1e-3 rad, random edge; returns the worst ratio seen.
TraceConstantEstimate verify_trace_constant(int j, std::size_t trials, std::uint64_t seed = 1);

/// Same oracle for the normal-derivative inequality; bound is trace_constant(k).
TraceConstantEstimate verify_normal_trace_constant(int k, std::size_t trials,
                                                   std::uint64_t seed = 1);

/// max over T of |u - I_h^1 u|_{1,T} / (R_T |u|_{2,T}); elements where
/// |u|_{2,T} vanishes contribute zero.
double interpolation_bound_check(const Mesh& mesh, const ExactSolution& exact);

/// Least-squares slope of log(error) against log(parameter); needs >= 3 rows
/// with positive entries.
double observed_order(std::span<const std::pair<double, double>> rows);

struct L2RatioRow {
  double R = 0.0;
  double l2 = 0.0;
  double dg_star = 0.0;
};

/// max of L2 / (R * DG*) over the rows.
double l2_ratio_check(std::span<const L2RatioRow> rows);

}  // namespace sipdg
