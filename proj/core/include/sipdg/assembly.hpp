#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "sipdg/dg_space.hpp"
#include "sipdg/mesh.hpp"
#include "sipdg/quadrature.hpp"
#include "sipdg/sparse.hpp"
#include "sipdg/topology.hpp"

namespace sipdg {

using ScalarField = std::function<double(Vec2)>;

/// Facet coefficient of the penalty term: eta / h_f (standard) or
/// eta * {|f| / |T~_f|} (adaptive, robust on anisotropic meshes).
enum class PenaltyVariant { standard, adaptive };

std::string_view to_string(PenaltyVariant v);
/// Accepts "std"/"standard" and "new"/"adaptive".
PenaltyVariant parse_penalty_variant(std::string_view s);

struct QuadratureDegrees {
  int volume = 2;  // 2k
  int facet = 3;   // 2k + 1
  int rhs = 4;     // max(2k + 2, 3)

  static QuadratureDegrees for_degree(int k);
};

struct SchemeConfig {
  PenaltyVariant variant = PenaltyVariant::adaptive;
  double eta = 0.8;
  int degree = 1;
  QuadratureDegrees quad = QuadratureDegrees::for_degree(1);

  /// eta = 10 (standard) or 0.8 (adaptive), quadrature matched to k.
  static SchemeConfig defaults(PenaltyVariant variant, int degree = 1);

  /// Throws InputError unless eta > 0 and the degree is supported.
  void validate() const;

  /// Adaptive variant with eta < C_tr(k)^2: coercivity is no longer guaranteed.
  bool below_coercivity_threshold() const;
};

/// Explicit constant in ||grad p . n||_f <= C (|f| / |T|)^{1/2} ||grad p||_T
/// for p in P_k on any triangle. Gradients lie in P_j with j = k - 1, whose
/// squared trace constant is (j + 1)(j + 2) / 2, so C = sqrt(k (k + 1) / 2).
double trace_constant(int k);

/// Penalty weight without eta: 1 / h_f or {|f| / |T~_f|}.
double facet_penalty_weight(const Mesh& mesh, const FacetTopology& topo, std::size_t f,
                            PenaltyVariant variant);
std::vector<double> facet_penalty_weights(const Mesh& mesh, const FacetTopology& topo,
                                          PenaltyVariant variant);

/// sum_T int_T grad v . grad w
CsrMatrix assemble_volume(const Mesh& mesh, const DofMap& dofs, const TriangleRule& rule);

/// sum_f int_f [w]{grad v}.n_f + [v]{grad w}.n_f, boundary facets included.
CsrMatrix assemble_jump(const Mesh& mesh, const FacetTopology& topo, const DofMap& dofs,
                        const SegmentRule& rule);

/// sum_f eta * weight_f int_f [v][w]
CsrMatrix assemble_penalty(const Mesh& mesh, const FacetTopology& topo, const DofMap& dofs,
                           const SegmentRule& rule, const SchemeConfig& config);

/// b_i = int phi psi_i
std::vector<double> assemble_rhs(const Mesh& mesh, const DofMap& dofs, const ScalarField& phi,
                                 const TriangleRule& rule);

/// A = A0 - J + P with the components kept for norm evaluation. Homogeneous
/// Dirichlet data enters weakly through the boundary facet terms.
struct AssembledSystem {
  CsrMatrix matrix;
  CsrMatrix volume;
  CsrMatrix jump;
  CsrMatrix penalty;
  std::vector<double> rhs;

  std::size_t size() const { return rhs.size(); }
};

AssembledSystem assemble_system(const Mesh& mesh, const FacetTopology& topo, const DofMap& dofs,
                                const SchemeConfig& config, const ScalarField& phi);

}  // namespace sipdg
