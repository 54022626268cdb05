#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "sipdg/mesh.hpp"
#include "sipdg/topology.hpp"

namespace sipdg {

inline constexpr int max_degree = 3;
inline constexpr std::size_t max_local_dofs = 10;  // (k+1)(k+2)/2 at k = 3

constexpr std::size_t local_dof_count(int k) {
  return static_cast<std::size_t>((k + 1) * (k + 2) / 2);
}

/// Element-wise numbering of the broken space P_k(T_h): element t owns the
/// contiguous block [t * D, (t + 1) * D). Nothing is shared between elements.
struct DofMap {
  int degree = 1;
  std::size_t per_element = 3;
  std::size_t num_elements = 0;

  std::size_t size() const { return per_element * num_elements; }
  std::size_t first(std::size_t element) const { return element * per_element; }
};

DofMap build_dof_map(const Mesh& mesh, int k);

/// Lagrange nodes on the reference triangle, ordered row by row:
/// (i/k, j/k) for j = 0..k, i = 0..k-j.
std::vector<Vec2> lagrange_nodes(int k);

struct BasisEval {
  std::size_t count = 0;
  std::array<double, max_local_dofs> values{};
  std::array<Vec2, max_local_dofs> gradients{};  // reference coordinates
};

/// Nodal basis values and reference gradients at reference point p.
BasisEval eval_basis(int k, Vec2 p);

/// x = origin + J xi with J = [v1 - v0, v2 - v0].
struct AffineMap {
  Vec2 origin;
  std::array<double, 4> jac{};      // row-major J
  std::array<double, 4> inv_jac{};  // row-major J^{-1}
  double det = 0.0;

  Vec2 to_physical(Vec2 xi) const {
    return {origin.x + jac[0] * xi.x + jac[1] * xi.y, origin.y + jac[2] * xi.x + jac[3] * xi.y};
  }
  Vec2 to_reference(Vec2 x) const {
    const Vec2 d = x - origin;
    return {inv_jac[0] * d.x + inv_jac[1] * d.y, inv_jac[2] * d.x + inv_jac[3] * d.y};
  }
  /// Physical gradient J^{-T} g of a reference gradient g.
  Vec2 physical_gradient(Vec2 g) const {
    return {inv_jac[0] * g.x + inv_jac[2] * g.y, inv_jac[1] * g.x + inv_jac[3] * g.y};
  }
};

AffineMap element_map(const Mesh& mesh, std::size_t t);

/// Basis evaluated at a reference point with physical gradients.
BasisEval eval_basis_physical(int k, const AffineMap& map, Vec2 ref);

/// One side of a facet: the element and the pullback of the facet
/// parameterization into its reference coordinates.
struct TraceSide {
  std::size_t element = no_element;
  AffineMap map;
  Vec2 ref_start;
  Vec2 ref_end;

  Vec2 reference_at(double t) const { return ref_start + t * (ref_end - ref_start); }
};

/// Parameterization t in [0, 1] of a facet from its lexicographically smaller
/// endpoint to the larger one, shared by both adjacent elements.
struct TraceFrame {
  std::size_t facet = 0;
  bool interior = false;
  Vec2 start;
  Vec2 end;
  Vec2 normal;  // outward normal of side 0
  double length = 0.0;
  std::array<TraceSide, 2> sides;

  Vec2 point(double t) const { return start + t * (end - start); }
};

TraceFrame facet_trace_frame(const Mesh& mesh, const FacetTopology& topo, std::size_t f);

/// Value and physical gradient of the discrete field restricted to one element.
struct LocalValue {
  double value = 0.0;
  Vec2 gradient;
};

LocalValue eval_local(const DofMap& dofs, std::span<const double> coeffs, std::size_t element,
                      const AffineMap& map, Vec2 ref);

/// [v], {v}, [grad v . n_f], {grad v} . n_f at parameter t. On boundary
/// facets the jump and mean both equal the one-sided trace.
struct JumpMean {
  double jump = 0.0;
  double mean = 0.0;
  double normal_jump = 0.0;
  double mean_normal = 0.0;
};

JumpMean eval_jump_mean(const DofMap& dofs, std::span<const double> coeffs,
                        const TraceFrame& frame, double t);

}  // namespace sipdg
