#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <vector>

#include "sipdg/mesh.hpp"

namespace sipdg {

enum class FacetKind { interior, boundary };

inline constexpr std::size_t no_element = std::numeric_limits<std::size_t>::max();

/// One edge of the triangulation. `vertices` is ordered lexicographically by
/// coordinates, which fixes the direction of the trace parameter t.
/// `first`/`second` are T_f^1 and T_f^2 (second == no_element on the boundary);
/// `normal` is the outward unit normal of `first`.
struct Facet {
  std::array<std::size_t, 2> vertices{};
  FacetKind kind = FacetKind::boundary;
  std::size_t first = no_element;
  std::size_t second = no_element;
  std::array<int, 2> local_edge{-1, -1};  // edge index inside first/second
  Vec2 normal;
  double length = 0.0;

  bool interior() const { return kind == FacetKind::interior; }
};

struct FacetTopology {
  std::vector<Facet> facets;
  /// element_facets[t][e] is the facet on local edge e of t (edge e joins
  /// local vertices e and (e+1) % 3).
  std::vector<std::array<std::size_t, 3>> element_facets;
  std::size_t num_interior = 0;
  std::size_t num_boundary = 0;

  std::size_t size() const { return facets.size(); }
};

/// Throws TopologyError if an edge is shared by more than two elements or an
/// unshared edge does not lie on the domain boundary (hanging node).
FacetTopology build_facet_topology(const Mesh& mesh);

struct FacetWeights {
  double length = 0.0;    // |f|
  double diameter = 0.0;  // h_f (= |f| in 2D)
  /// {|f| / |T~_f|}: sum over the adjacent elements of |f| / (|T| / 3).
  double penalty_weight = 0.0;
};

FacetWeights facet_weights(const Mesh& mesh, const FacetTopology& topo, std::size_t f);

}  // namespace sipdg
