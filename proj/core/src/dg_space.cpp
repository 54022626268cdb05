#include "sipdg/dg_space.hpp"

#include <string>

#include "sipdg/errors.hpp"

namespace sipdg {
namespace {

void check_degree(int k) {
  if (k < 1 || k > max_degree) {
    throw InputError("unsupported polynomial degree " + std::to_string(k));
  }
}

// L_a(l) = prod_{s<a} (k l - s) / (s + 1) and its derivative in l.
std::pair<double, double> lattice_factor(int k, int a, double l) {
  double value = 1.0, deriv = 0.0;
  for (int s = 0; s < a; ++s) {
    const double f = (k * l - s) / (s + 1);
    const double df = static_cast<double>(k) / (s + 1);
    deriv = deriv * f + value * df;
    value *= f;
  }
  return {value, deriv};
}

Vec2 reference_vertex(int local) {
  switch (local) {
    case 0: return {0.0, 0.0};
    case 1: return {1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

int local_index(const Triangle& tri, std::size_t vertex) {
  for (int i = 0; i < 3; ++i) {
    if (tri[static_cast<std::size_t>(i)] == vertex) return i;
  }
  throw TopologyError("facet vertex is not a vertex of its element");
}

}  // namespace

DofMap build_dof_map(const Mesh& mesh, int k) {
  check_degree(k);
  return {k, local_dof_count(k), mesh.num_elements()};
}

std::vector<Vec2> lagrange_nodes(int k) {
  check_degree(k);
  std::vector<Vec2> nodes;
  for (int j = 0; j <= k; ++j) {
    for (int i = 0; i + j <= k; ++i) {
      nodes.push_back({static_cast<double>(i) / k, static_cast<double>(j) / k});
    }
  }
  return nodes;
}

BasisEval eval_basis(int k, Vec2 p) {
  check_degree(k);
  const double l0 = 1.0 - p.x - p.y, l1 = p.x, l2 = p.y;
  BasisEval out;
  std::size_t n = 0;
  for (int j = 0; j <= k; ++j) {
    for (int i = 0; i + j <= k; ++i) {
      const auto [f0, d0] = lattice_factor(k, k - i - j, l0);
      const auto [f1, d1] = lattice_factor(k, i, l1);
      const auto [f2, d2] = lattice_factor(k, j, l2);
      out.values[n] = f0 * f1 * f2;
      out.gradients[n] = {-d0 * f1 * f2 + f0 * d1 * f2, -d0 * f1 * f2 + f0 * f1 * d2};
      ++n;
    }
  }
  out.count = n;
  return out;
}

AffineMap element_map(const Mesh& mesh, std::size_t t) {
  const auto [a, b, c] = mesh.corners(t);
  AffineMap m;
  m.origin = a;
  const Vec2 e1 = b - a, e2 = c - a;
  m.jac = {e1.x, e2.x, e1.y, e2.y};
  m.det = cross(e1, e2);
  if (!(m.det > 0.0)) {
    throw DegenerateElementError("element " + std::to_string(t) + " is degenerate or clockwise");
  }
  const double inv = 1.0 / m.det;
  m.inv_jac = {e2.y * inv, -e2.x * inv, -e1.y * inv, e1.x * inv};
  return m;
}

BasisEval eval_basis_physical(int k, const AffineMap& map, Vec2 ref) {
  BasisEval b = eval_basis(k, ref);
  for (std::size_t i = 0; i < b.count; ++i) b.gradients[i] = map.physical_gradient(b.gradients[i]);
  return b;
}

TraceFrame facet_trace_frame(const Mesh& mesh, const FacetTopology& topo, std::size_t f) {
  if (f >= topo.size()) throw InputError("facet_trace_frame: facet index out of range");
  const Facet& facet = topo.facets[f];
  TraceFrame frame;
  frame.facet = f;
  frame.interior = facet.interior();
  frame.start = mesh.vertices[facet.vertices[0]];
  frame.end = mesh.vertices[facet.vertices[1]];
  frame.normal = facet.normal;
  frame.length = facet.length;

  const std::array<std::size_t, 2> elems{facet.first, facet.second};
  const std::size_t nsides = frame.interior ? 2 : 1;
  for (std::size_t s = 0; s < nsides; ++s) {
    TraceSide& side = frame.sides[s];
    side.element = elems[s];
    side.map = element_map(mesh, elems[s]);
    const Triangle& tri = mesh.triangles[elems[s]];
    side.ref_start = reference_vertex(local_index(tri, facet.vertices[0]));
    side.ref_end = reference_vertex(local_index(tri, facet.vertices[1]));
  }
  return frame;
}

LocalValue eval_local(const DofMap& dofs, std::span<const double> coeffs, std::size_t element,
                      const AffineMap& map, Vec2 ref) {
  const BasisEval b = eval_basis(dofs.degree, ref);
  const std::size_t base = dofs.first(element);
  LocalValue out;
  Vec2 g;
  for (std::size_t i = 0; i < b.count; ++i) {
    const double c = coeffs[base + i];
    out.value += c * b.values[i];
    g += c * b.gradients[i];
  }
  out.gradient = map.physical_gradient(g);
  return out;
}

JumpMean eval_jump_mean(const DofMap& dofs, std::span<const double> coeffs,
                        const TraceFrame& frame, double t) {
  if (coeffs.size() != dofs.size()) throw InputError("eval_jump_mean: coefficient size mismatch");
  const TraceSide& s1 = frame.sides[0];
  const LocalValue v1 = eval_local(dofs, coeffs, s1.element, s1.map, s1.reference_at(t));
  const double dn1 = dot(v1.gradient, frame.normal);
  if (!frame.interior) return {v1.value, v1.value, dn1, dn1};
  const TraceSide& s2 = frame.sides[1];
  const LocalValue v2 = eval_local(dofs, coeffs, s2.element, s2.map, s2.reference_at(t));
  const double dn2 = dot(v2.gradient, frame.normal);
  return {v1.value - v2.value, 0.5 * (v1.value + v2.value), dn1 - dn2, 0.5 * (dn1 + dn2)};
}

}  // namespace sipdg
