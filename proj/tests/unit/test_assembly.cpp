#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "sipdg/analysis.hpp"
#include "sipdg/assembly.hpp"
#include "sipdg/errors.hpp"
#include "sipdg/problems.hpp"
#include "sipdg/solvers.hpp"

using namespace sipdg;

namespace {

// Not a rectangle triangulation, so only element-wise routines apply.
Mesh reference_triangle() {
  Mesh mesh;
  mesh.domain = Rect::unit_square();
  mesh.vertices = {{0, 0}, {1, 0}, {0, 1}};
  mesh.triangles = {{0, 1, 2}};
  return mesh;
}

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

// Nodal coefficients of a per-element affine function.
std::vector<double> nodal(const Mesh& mesh, const DofMap& dofs,
                          const std::function<double(std::size_t, Vec2)>& f) {
  std::vector<double> c(dofs.size());
  for (std::size_t t = 0; t < mesh.num_elements(); ++t)
    for (std::size_t i = 0; i < 3; ++i) c[dofs.first(t) + i] = f(t, mesh.vertices[mesh.triangles[t][i]]);
  return c;
}

struct Discretization {
  Mesh mesh;
  FacetTopology topo;
  DofMap dofs;
  explicit Discretization(Mesh m, int k = 1)
      : mesh(std::move(m)), topo(build_facet_topology(mesh)), dofs(build_dof_map(mesh, k)) {}
};

}  // namespace

TEST(Volume, ReferenceTriangleStiffness) {
  const Mesh mesh = reference_triangle();
  const CsrMatrix a = assemble_volume(mesh, build_dof_map(mesh, 1), triangle_rule(2));
  const double expected[3][3] = {{1.0, -0.5, -0.5}, {-0.5, 0.5, 0.0}, {-0.5, 0.0, 0.5}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(a.at(i, j), expected[i][j], 1e-15);
}

TEST(Volume, ConstantsAreInTheKernel) {
  const Discretization s(generate_schwarz_peano_mesh(6, 1.5), 2);
  const CsrMatrix a = assemble_volume(s.mesh, s.dofs, triangle_rule(4));
  const auto y = matvec(a, std::vector<double>(s.dofs.size(), 1.0));
  for (double v : y) EXPECT_NEAR(v, 0.0, 1e-12);
  EXPECT_LT(max_asymmetry(a), 1e-13);
}

TEST(Jump, MatchesBruteForceFacetIntegration) {
  // Two triangles T0 = (0,0),(1,0),(1,1) and T1 = (0,0),(1,1),(0,1) with
  // discontinuous affine v, w. Facets, owners and outward normals of the first
  // owner are listed by hand.
  const Discretization s(generate_rect_mesh(1, 1));
  ASSERT_EQ(s.mesh.corners(0)[1], (Vec2{1, 0}));
  auto v = [](std::size_t t, Vec2 p) { return t == 0 ? 1.0 + p.x : 0.0; };
  auto gv = [](std::size_t t) { return t == 0 ? Vec2{1, 0} : Vec2{0, 0}; };
  auto w = [](std::size_t t, Vec2 p) { return t == 0 ? 2.0 * p.y : p.x - p.y + 1.0; };
  auto gw = [](std::size_t t) { return t == 0 ? Vec2{0, 2} : Vec2{1, -1}; };

  struct HandFacet {
    Vec2 a, b;
    int first, second;
    Vec2 normal;
  };
  const double r = 1.0 / std::sqrt(2.0);
  const HandFacet facets[] = {{{0, 0}, {1, 1}, 0, 1, {-r, r}},
                              {{0, 0}, {1, 0}, 0, -1, {0, -1}},
                              {{1, 0}, {1, 1}, 0, -1, {1, 0}},
                              {{0, 1}, {1, 1}, 1, -1, {0, 1}},
                              {{0, 0}, {0, 1}, 1, -1, {-1, 0}}};
  const SegmentRule g = segment_rule(10);
  double expected = 0.0;
  for (const auto& f : facets) {
    const double len = distance(f.a, f.b);
    for (std::size_t q = 0; q < g.size(); ++q) {
      const Vec2 x = f.a + g.points[q] * (f.b - f.a);
      const auto t1 = static_cast<std::size_t>(f.first);
      double jv = v(t1, x), jw = w(t1, x);
      double mv = dot(gv(t1), f.normal), mw = dot(gw(t1), f.normal);
      if (f.second >= 0) {
        const auto t2 = static_cast<std::size_t>(f.second);
        jv -= v(t2, x);
        jw -= w(t2, x);
        mv = 0.5 * (mv + dot(gv(t2), f.normal));
        mw = 0.5 * (mw + dot(gw(t2), f.normal));
      }
      expected += len * g.weights[q] * (jw * mv + jv * mw);
    }
  }
  const CsrMatrix j = assemble_jump(s.mesh, s.topo, s.dofs, segment_rule(2));
  const double got = bilinear(j, nodal(s.mesh, s.dofs, v), nodal(s.mesh, s.dofs, w));
  EXPECT_NEAR(got, expected, 1e-14);
  EXPECT_NE(expected, 0.0);
}

TEST(Jump, VanishesForContinuousZeroBoundaryFields) {
  const Discretization s(generate_rect_mesh(6, 9));
  const auto exact = sine_problem(Rect::unit_square());
  const auto v = lagrange_interpolate(s.mesh, s.dofs, exact);
  auto bump = [](std::size_t, Vec2 p) { return std::sin(3 * p.x) * p.x * (1 - p.x) * p.y * (1 - p.y); };
  const auto w = nodal(s.mesh, s.dofs, bump);
  const CsrMatrix j = assemble_jump(s.mesh, s.topo, s.dofs, segment_rule(2));
  EXPECT_NEAR(bilinear(j, v, w), 0.0, 1e-13);
  EXPECT_LT(max_asymmetry(j), 1e-13);
  for (auto variant : {PenaltyVariant::standard, PenaltyVariant::adaptive}) {
    const CsrMatrix p = assemble_penalty(s.mesh, s.topo, s.dofs, segment_rule(2), SchemeConfig::defaults(variant));
    EXPECT_NEAR(bilinear(p, v, v), 0.0, 1e-12);
  }
}

TEST(Penalty, ElementIndicatorClosedForm) {
  // Interior element of a uniform n = m mesh: legs h (weight 12/h) and a
  // diagonal sqrt(2) h (weight 12 sqrt(2)/h), so sum eta w_f |f| = 48 eta.
  // The standard coefficient eta/h_f gives sum eta |f|/h_f = 3 eta.
  const Discretization s(generate_rect_mesh(5, 5));
  const std::size_t t = 2 * (2 * 5 + 2);  // a cell away from the boundary
  for (std::size_t e = 0; e < 3; ++e) ASSERT_TRUE(s.topo.facets[s.topo.element_facets[t][e]].interior());
  std::vector<double> v(s.dofs.size(), 0.0);
  for (std::size_t i = 0; i < 3; ++i) v[s.dofs.first(t) + i] = 1.0;
  const double eta = 0.8;
  SchemeConfig cfg = SchemeConfig::defaults(PenaltyVariant::adaptive);
  cfg.eta = eta;
  EXPECT_NEAR(bilinear(assemble_penalty(s.mesh, s.topo, s.dofs, segment_rule(2), cfg), v, v), 48.0 * eta, 1e-12);
  cfg.variant = PenaltyVariant::standard;
  EXPECT_NEAR(bilinear(assemble_penalty(s.mesh, s.topo, s.dofs, segment_rule(2), cfg), v, v), 3.0 * eta, 1e-13);
}

TEST(Rhs, ClosedForms) {
  const Mesh mesh = reference_triangle();
  const DofMap dofs = build_dof_map(mesh, 1);
  const auto b = assemble_rhs(mesh, dofs, [](Vec2) { return 1.0; }, triangle_rule(4));
  for (double v : b) EXPECT_NEAR(v, 0.5 / 3.0, 1e-15);
  const auto z = assemble_rhs(mesh, dofs, [](Vec2) { return 0.0; }, triangle_rule(4));
  for (double v : z) EXPECT_EQ(v, 0.0);

  const Discretization big(generate_rect_mesh(40, 40));
  const auto exact = sine_problem(Rect::unit_square());
  const auto bb = assemble_rhs(big.mesh, big.dofs, exact.rhs, triangle_rule(4));
  double sum = 0.0;
  for (double v : bb) sum += v;
  EXPECT_NEAR(sum, 4.0, 1e-6);
}

TEST(System, ComponentIdentityAndSymmetry) {
  for (auto variant : {PenaltyVariant::standard, PenaltyVariant::adaptive}) {
    const Discretization s(generate_schwarz_peano_mesh(8, 1.8), 2);
    const auto exact = problem_by_id("biunit-sine");
    const AssembledSystem sys = assemble_system(s.mesh, s.topo, s.dofs, SchemeConfig::defaults(variant, 2), exact.rhs);
    EXPECT_LT(max_asymmetry(sys.matrix), 1e-13 * max_abs(sys.matrix));
    const CsrMatrix rebuilt = add_scaled(add_scaled(sys.volume, 1.0, sys.jump, -1.0), 1.0, sys.penalty, 1.0);
    for (std::size_t i = 0; i < sys.size(); ++i)
      for (std::size_t k = sys.matrix.row_ptr()[i]; k < sys.matrix.row_ptr()[i + 1]; ++k) {
        const auto j = static_cast<std::size_t>(sys.matrix.col_idx()[k]);
        EXPECT_EQ(sys.matrix.values()[k], rebuilt.at(i, j));
      }
  }
}

TEST(System, CoercivityAtTheTraceThreshold) {
  std::mt19937_64 rng(3);
  for (const Mesh& mesh : {generate_rect_mesh(10, 100), generate_schwarz_peano_mesh(16, 2.0)}) {
    const Discretization s(mesh);
    SchemeConfig cfg = SchemeConfig::defaults(PenaltyVariant::adaptive);
    cfg.eta = trace_constant(1) * trace_constant(1);
    EXPECT_FALSE(cfg.below_coercivity_threshold());
    const AssembledSystem sys = assemble_system(s.mesh, s.topo, s.dofs, cfg, [](Vec2) { return 0.0; });
    for (int trial = 0; trial < 20; ++trial) {
      const auto w = random_vector(s.dofs.size(), rng);
      const double a = bilinear(sys.matrix, w, w);
      const double energy = bilinear(sys.volume, w, w) + bilinear(sys.penalty, w, w);
      EXPECT_GE(a / energy, 0.5 - 1e-10);
    }
  }
}

TEST(System, ConsistencyResidualVanishes) {
  const Discretization s(generate_rect_mesh(8, 8));
  const auto exact = sine_problem(Rect::unit_square());
  for (auto variant : {PenaltyVariant::standard, PenaltyVariant::adaptive}) {
    const auto r = consistency_residual(s.mesh, s.topo, s.dofs, exact, SchemeConfig::defaults(variant),
                                        ErrorQuadrature::with_degree(10));
    double worst = 0.0;
    for (double v : r) worst = std::max(worst, std::abs(v));
    EXPECT_LT(worst, 1e-8);
  }
}

TEST(System, ConsistencyResidualDetectsAWrongSign) {
  // Same residual with u replaced by 2u: a_h(2u, v) - (phi, v) = (phi, v) != 0.
  const Discretization s(generate_rect_mesh(8, 8));
  ExactSolution doubled = sine_problem(Rect::unit_square());
  const auto u = doubled.u;
  const auto g = doubled.gradient;
  doubled.u = [u](Vec2 p) { return 2.0 * u(p); };
  doubled.gradient = [g](Vec2 p) { return 2.0 * g(p); };
  const auto r = consistency_residual(s.mesh, s.topo, s.dofs, doubled, SchemeConfig::defaults(PenaltyVariant::adaptive),
                                      ErrorQuadrature::with_degree(10));
  double worst = 0.0;
  for (double v : r) worst = std::max(worst, std::abs(v));
  EXPECT_GT(worst, 1e-3);
}

TEST(System, GalerkinOrthogonality) {
  const Discretization s(generate_rect_mesh(8, 8));
  const auto exact = sine_problem(Rect::unit_square());
  const SchemeConfig cfg = SchemeConfig::defaults(PenaltyVariant::adaptive);
  const auto q = ErrorQuadrature::with_degree(10);
  const AssembledSystem sys = assemble_system(s.mesh, s.topo, s.dofs, cfg, exact.rhs);
  const auto b = assemble_rhs(s.mesh, s.dofs, exact.rhs, q.volume);
  const SolveReport rep = iccg_solve(sys.matrix, b);
  ASSERT_TRUE(rep.converged());
  // a(u - u_h, psi_i) = a(u, psi_i) - (A u_h)_i with a(u, psi_i) = r_i + (phi, psi_i)
  const auto res = consistency_residual(s.mesh, s.topo, s.dofs, exact, cfg, q);
  const auto au = matvec(sys.matrix, rep.solution);
  for (std::size_t i = 0; i < sys.size(); ++i) EXPECT_LT(std::abs(res[i] + b[i] - au[i]), 1e-8);
}

TEST(System, BoundednessInTheStarNorm) {
  std::mt19937_64 rng(5);
  const Discretization s(generate_schwarz_peano_mesh(10, 1.5));
  const SchemeConfig cfg = SchemeConfig::defaults(PenaltyVariant::adaptive);
  const AssembledSystem sys = assemble_system(s.mesh, s.topo, s.dofs, cfg, [](Vec2) { return 0.0; });
  const ExactSolution zero = zero_field();
  const auto quad = ErrorQuadrature::for_mode(QuadratureMode::exact, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = random_vector(s.dofs.size(), rng);
    const auto w = random_vector(s.dofs.size(), rng);
    const double nv = error_norms(s.mesh, s.topo, s.dofs, v, zero, cfg, quad).dg_star;
    const double nw = error_norms(s.mesh, s.topo, s.dofs, w, zero, cfg, quad).dg_star;
    EXPECT_LE(std::abs(bilinear(sys.matrix, v, w)), nv * nw * (1.0 + 1e-10));
  }
}

TEST(SchemeConfig, DefaultsAndValidation) {
  EXPECT_EQ(SchemeConfig::defaults(PenaltyVariant::standard).eta, 10.0);
  EXPECT_EQ(SchemeConfig::defaults(PenaltyVariant::adaptive).eta, 0.8);
  EXPECT_TRUE(SchemeConfig::defaults(PenaltyVariant::adaptive).below_coercivity_threshold());
  EXPECT_FALSE(SchemeConfig::defaults(PenaltyVariant::standard).below_coercivity_threshold());
  SchemeConfig bad = SchemeConfig::defaults(PenaltyVariant::adaptive);
  bad.eta = 0.0;
  EXPECT_THROW(bad.validate(), InputError);
  EXPECT_EQ(parse_penalty_variant("std"), PenaltyVariant::standard);
  EXPECT_EQ(parse_penalty_variant("new"), PenaltyVariant::adaptive);
  EXPECT_THROW(parse_penalty_variant("other"), InputError);
  const QuadratureDegrees q = QuadratureDegrees::for_degree(2);
  EXPECT_EQ(q.volume, 4);
  EXPECT_EQ(q.facet, 5);
  EXPECT_EQ(q.rhs, 6);
}

TEST(TraceConstant, ClosedForm) {
  EXPECT_DOUBLE_EQ(trace_constant(1), 1.0);
  EXPECT_DOUBLE_EQ(trace_constant(2), std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(trace_constant(3), std::sqrt(6.0));
}
