// Randomized verification of the geometry-independent trace constants. The
// maxima over polynomial spaces are generalized eigenvalues of facet and
// element Gram matrices, evaluated through physical coordinates.
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sipdg/analysis.hpp"
#include "sipdg/errors.hpp"
#include "sipdg/mesh.hpp"

namespace sipdg {
namespace {

struct Monomial {
  int px, py;
};

std::vector<Monomial> monomials(int degree, int min_degree) {
  std::vector<Monomial> out;
  for (int d = min_degree; d <= degree; ++d) {
    for (int py = 0; py <= d; ++py) out.push_back({d - py, py});
  }
  return out;
}

double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

// Value and reference gradient of xi^px eta^py.
std::pair<double, Vec2> eval_monomial(Monomial m, Vec2 xi) {
  const double v = ipow(xi.x, m.px) * ipow(xi.y, m.py);
  const double dx = m.px > 0 ? m.px * ipow(xi.x, m.px - 1) * ipow(xi.y, m.py) : 0.0;
  const double dy = m.py > 0 ? m.py * ipow(xi.x, m.px) * ipow(xi.y, m.py - 1) : 0.0;
  return {v, {dx, dy}};
}

AffineMap triangle_map(Vec2 a, Vec2 b, Vec2 c) {
  Mesh m;
  m.vertices = {a, b, c};
  m.triangles = {{0, 1, 2}};
  return element_map(m, 0);
}

double max_generalized_eigenvalue(const Eigen::MatrixXd& facet, const Eigen::MatrixXd& element) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(facet, element,
                                                                   Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("trace oracle: generalized eigenproblem failed");
  }
  return solver.eigenvalues().maxCoeff();
}

enum class TraceKind { value, normal_derivative };

double trace_ratio(Vec2 a, Vec2 b, Vec2 c, int edge, int degree, TraceKind kind) {
  if (edge < 0 || edge > 2) throw InputError("trace oracle: edge index must be 0, 1 or 2");
  const AffineMap map = triangle_map(a, b, c);
  const double area = 0.5 * map.det;
  const std::array<Vec2, 3> p{a, b, c};
  const Vec2 f0 = p[static_cast<std::size_t>(edge)];
  const Vec2 f1 = p[static_cast<std::size_t>((edge + 1) % 3)];
  const double flen = distance(f0, f1);
  const Vec2 d = f1 - f0;
  const Vec2 normal = (1.0 / flen) * Vec2{d.y, -d.x};

  const auto basis = monomials(degree, kind == TraceKind::value ? 0 : 1);
  const auto nb = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd element = Eigen::MatrixXd::Zero(nb, nb);
  Eigen::MatrixXd facet = Eigen::MatrixXd::Zero(nb, nb);
  Eigen::VectorXd row(nb);

  const TriangleRule trule = triangle_rule(std::max(1, 2 * degree));
  for (std::size_t q = 0; q < trule.size(); ++q) {
    const Vec2 x = map.to_physical(trule.reference_point(q));
    const Vec2 xi = map.to_reference(x);
    if (kind == TraceKind::value) {
      for (Eigen::Index i = 0; i < nb; ++i) row(i) = eval_monomial(basis[static_cast<std::size_t>(i)], xi).first;
      element += area * trule.weights[q] * row * row.transpose();
    } else {
      Eigen::VectorXd gx(nb), gy(nb);
      for (Eigen::Index i = 0; i < nb; ++i) {
        const Vec2 g = map.physical_gradient(eval_monomial(basis[static_cast<std::size_t>(i)], xi).second);
        gx(i) = g.x;
        gy(i) = g.y;
      }
      element += area * trule.weights[q] * (gx * gx.transpose() + gy * gy.transpose());
    }
  }
  const SegmentRule srule = segment_rule_for_degree(2 * degree);
  for (std::size_t q = 0; q < srule.size(); ++q) {
    const Vec2 x = f0 + srule.points[q] * d;
    const Vec2 xi = map.to_reference(x);
    for (Eigen::Index i = 0; i < nb; ++i) {
      const auto [v, g] = eval_monomial(basis[static_cast<std::size_t>(i)], xi);
      row(i) = kind == TraceKind::value ? v : dot(map.physical_gradient(g), normal);
    }
    facet += flen * srule.weights[q] * row * row.transpose();
  }
  const double lambda = max_generalized_eigenvalue(facet, element);
  return std::sqrt(std::max(0.0, lambda) * area / flen);
}

struct TriangleSample {
  std::array<Vec2, 3> v;
  int edge;
};

// Base (0,0)-(1,0), apex at (s, 1/aspect) with log-uniform aspect in
// [1, 1e4]; then a random rotation, scale and shift.
TriangleSample random_triangle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double aspect = std::pow(10.0, 4.0 * unit(rng));
  const double s = -0.25 + 1.5 * unit(rng);
  Vec2 a{0.0, 0.0}, b{1.0, 0.0}, c{s, 1.0 / aspect};
  const double theta = 2.0 * std::numbers::pi * unit(rng);
  const double scale = std::pow(10.0, -2.0 + 4.0 * unit(rng));
  const Vec2 shift{unit(rng) * 10.0 - 5.0, unit(rng) * 10.0 - 5.0};
  auto place = [&](Vec2 p) {
    const double ct = std::cos(theta), st = std::sin(theta);
    return shift + scale * Vec2{ct * p.x - st * p.y, st * p.x + ct * p.y};
  };
  TriangleSample t{{place(a), place(b), place(c)}, static_cast<int>(unit(rng) * 3.0) % 3};
  return t;
}

TraceConstantEstimate run_oracle(int degree, std::size_t trials, std::uint64_t seed,
                                 TraceKind kind) {
  if (trials < 100) throw InputError("trace oracle: at least 100 trials are required");
  std::mt19937_64 rng(seed);
  TraceConstantEstimate est;
  est.degree = degree;
  est.trials = trials;
  est.bound = kind == TraceKind::value ? std::sqrt(0.5 * (degree + 1) * (degree + 2))
                                       : trace_constant(degree);
  for (std::size_t i = 0; i < trials; ++i) {
    const TriangleSample t = random_triangle(rng);
    est.max_ratio = std::max(est.max_ratio, trace_ratio(t.v[0], t.v[1], t.v[2], t.edge, degree, kind));
  }
  return est;
}

}  // namespace

double trace_ratio_max(Vec2 a, Vec2 b, Vec2 c, int edge, int j) {
  if (j < 0 || j > 5) throw InputError("trace_ratio_max: degree must lie in [0, 5]");
  return trace_ratio(a, b, c, edge, j, TraceKind::value);
}

double normal_trace_ratio_max(Vec2 a, Vec2 b, Vec2 c, int edge, int k) {
  if (k < 1 || k > 5) throw InputError("normal_trace_ratio_max: degree must lie in [1, 5]");
  return trace_ratio(a, b, c, edge, k, TraceKind::normal_derivative);
}

TraceConstantEstimate verify_trace_constant(int j, std::size_t trials, std::uint64_t seed) {
  if (j < 0 || j > 5) throw InputError("verify_trace_constant: degree must lie in [0, 5]");
  return run_oracle(j, trials, seed, TraceKind::value);
}

TraceConstantEstimate verify_normal_trace_constant(int k, std::size_t trials, std::uint64_t seed) {
  if (k < 1 || k > 5) throw InputError("verify_normal_trace_constant: degree must lie in [1, 5]");
  return run_oracle(k, trials, seed, TraceKind::normal_derivative);
}

}  // namespace sipdg
