#include "sipdg/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sipdg/errors.hpp"

namespace sipdg {

std::string_view to_string(PenaltyVariant v) {
  return v == PenaltyVariant::standard ? "std" : "new";
}

PenaltyVariant parse_penalty_variant(std::string_view s) {
  if (s == "std" || s == "standard") return PenaltyVariant::standard;
  if (s == "new" || s == "adaptive") return PenaltyVariant::adaptive;
  throw InputError("unknown scheme '" + std::string(s) + "' (expected std or new)");
}

QuadratureDegrees QuadratureDegrees::for_degree(int k) {
  return {std::max(1, 2 * k), 2 * k + 1, std::max(2 * k + 2, 3)};
}

SchemeConfig SchemeConfig::defaults(PenaltyVariant variant, int degree) {
  SchemeConfig c;
  c.variant = variant;
  c.eta = variant == PenaltyVariant::standard ? 10.0 : 0.8;
  c.degree = degree;
  c.quad = QuadratureDegrees::for_degree(degree);
  return c;
}

void SchemeConfig::validate() const {
  if (!(eta > 0.0)) throw InputError("penalty parameter eta must be positive");
  if (degree < 1 || degree > max_degree) {
    throw InputError("unsupported polynomial degree " + std::to_string(degree));
  }
}

bool SchemeConfig::below_coercivity_threshold() const {
  const double c = trace_constant(degree);
  return variant == PenaltyVariant::adaptive && eta < c * c;
}

double trace_constant(int k) {
  if (k < 1) throw InputError("trace_constant: degree must be at least 1");
  return std::sqrt(0.5 * k * (k + 1));
}

double facet_penalty_weight(const Mesh& mesh, const FacetTopology& topo, std::size_t f,
                            PenaltyVariant variant) {
  const FacetWeights w = facet_weights(mesh, topo, f);
  return variant == PenaltyVariant::standard ? 1.0 / w.diameter : w.penalty_weight;
}

std::vector<double> facet_penalty_weights(const Mesh& mesh, const FacetTopology& topo,
                                          PenaltyVariant variant) {
  std::vector<double> w(topo.size());
  for (std::size_t f = 0; f < topo.size(); ++f) w[f] = facet_penalty_weight(mesh, topo, f, variant);
  return w;
}

CsrMatrix assemble_volume(const Mesh& mesh, const DofMap& dofs, const TriangleRule& rule) {
  const std::size_t nd = dofs.per_element;
  std::vector<BasisEval> ref(rule.size());
  for (std::size_t q = 0; q < rule.size(); ++q) {
    ref[q] = eval_basis(dofs.degree, rule.reference_point(q));
  }
  std::vector<Triplet> triplets;
  triplets.reserve(mesh.num_elements() * nd * nd);
  std::array<double, max_local_dofs * max_local_dofs> local{};
  std::array<Vec2, max_local_dofs> grad{};
  for (std::size_t t = 0; t < mesh.num_elements(); ++t) {
    const AffineMap map = element_map(mesh, t);
    const double area = 0.5 * map.det;
    std::fill(local.begin(), local.end(), 0.0);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      for (std::size_t i = 0; i < nd; ++i) grad[i] = map.physical_gradient(ref[q].gradients[i]);
      const double w = area * rule.weights[q];
      for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t j = 0; j < nd; ++j) local[i * nd + j] += w * dot(grad[i], grad[j]);
      }
    }
    const std::size_t base = dofs.first(t);
    for (std::size_t i = 0; i < nd; ++i) {
      for (std::size_t j = 0; j < nd; ++j) triplets.push_back({base + i, base + j, local[i * nd + j]});
    }
  }
  CsrMatrix a = csr_from_triplets(dofs.size(), triplets);
  a.set_symmetric(true);
  return a;
}

namespace {

enum class FacetTerm { jump, penalty };

// Facet-local jump / mean-flux data for every dof of the (one or two) sides.
struct FacetBasis {
  std::size_t count = 0;
  std::array<std::size_t, 2 * max_local_dofs> dof{};
  std::array<double, 2 * max_local_dofs> jump{};
  std::array<double, 2 * max_local_dofs> mean_flux{};
};

FacetBasis facet_basis(const DofMap& dofs, const TraceFrame& frame, double t) {
  FacetBasis fb;
  const std::size_t nsides = frame.interior ? 2 : 1;
  const double mean_factor = frame.interior ? 0.5 : 1.0;
  for (std::size_t s = 0; s < nsides; ++s) {
    const TraceSide& side = frame.sides[s];
    const BasisEval b = eval_basis_physical(dofs.degree, side.map, side.reference_at(t));
    const double sign = s == 0 ? 1.0 : -1.0;
    const std::size_t base = dofs.first(side.element);
    for (std::size_t i = 0; i < b.count; ++i) {
      fb.dof[fb.count] = base + i;
      fb.jump[fb.count] = sign * b.values[i];
      fb.mean_flux[fb.count] = mean_factor * dot(b.gradients[i], frame.normal);
      ++fb.count;
    }
  }
  return fb;
}

CsrMatrix assemble_facets(const Mesh& mesh, const FacetTopology& topo, const DofMap& dofs,
                          const SegmentRule& rule, FacetTerm term,
                          std::span<const double> coefficient) {
  constexpr std::size_t kMax = 2 * max_local_dofs;
  std::vector<Triplet> triplets;
  triplets.reserve(topo.num_interior * 4 * dofs.per_element * dofs.per_element +
                   topo.num_boundary * dofs.per_element * dofs.per_element);
  std::array<double, kMax * kMax> local{};
  for (std::size_t f = 0; f < topo.size(); ++f) {
    const TraceFrame frame = facet_trace_frame(mesh, topo, f);
    const double scale = term == FacetTerm::penalty ? coefficient[f] : 1.0;
    std::size_t n = 0;
    std::array<std::size_t, kMax> dof{};
    std::fill(local.begin(), local.end(), 0.0);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const FacetBasis fb = facet_basis(dofs, frame, rule.points[q]);
      n = fb.count;
      dof = fb.dof;
      const double w = scale * frame.length * rule.weights[q];
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          local[a * kMax + b] += term == FacetTerm::penalty
                                     ? w * fb.jump[a] * fb.jump[b]
                                     : w * (fb.jump[a] * fb.mean_flux[b] + fb.jump[b] * fb.mean_flux[a]);
        }
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) triplets.push_back({dof[a], dof[b], local[a * kMax + b]});
    }
  }
  CsrMatrix m = csr_from_triplets(dofs.size(), triplets);
  m.set_symmetric(true);
  return m;
}

}  // namespace

CsrMatrix assemble_jump(const Mesh& mesh, const FacetTopology& topo, const DofMap& dofs,
                        const SegmentRule& rule) {
  return assemble_facets(mesh, topo, dofs, rule, FacetTerm::jump, {});
}

CsrMatrix assemble_penalty(const Mesh& mesh, const FacetTopology& topo, const DofMap& dofs,
                           const SegmentRule& rule, const SchemeConfig& config) {
  config.validate();
  std::vector<double> coeff = facet_penalty_weights(mesh, topo, config.variant);
  for (double& c : coeff) c *= config.eta;
  return assemble_facets(mesh, topo, dofs, rule, FacetTerm::penalty, coeff);
}

std::vector<double> assemble_rhs(const Mesh& mesh, const DofMap& dofs, const ScalarField& phi,
                                 const TriangleRule& rule) {
  std::vector<BasisEval> ref(rule.size());
  for (std::size_t q = 0; q < rule.size(); ++q) {
    ref[q] = eval_basis(dofs.degree, rule.reference_point(q));
  }
  std::vector<double> b(dofs.size(), 0.0);
  for (std::size_t t = 0; t < mesh.num_elements(); ++t) {
    const AffineMap map = element_map(mesh, t);
    const double area = 0.5 * map.det;
    const std::size_t base = dofs.first(t);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double w = area * rule.weights[q] * phi(map.to_physical(rule.reference_point(q)));
      for (std::size_t i = 0; i < dofs.per_element; ++i) b[base + i] += w * ref[q].values[i];
    }
  }
  return b;
}

AssembledSystem assemble_system(const Mesh& mesh, const FacetTopology& topo, const DofMap& dofs,
                                const SchemeConfig& config, const ScalarField& phi) {
  config.validate();
  if (dofs.num_elements != mesh.num_elements() || dofs.degree != config.degree) {
    throw InputError("assemble_system: dof map does not match mesh or scheme degree");
  }
  AssembledSystem sys;
  sys.volume = assemble_volume(mesh, dofs, triangle_rule(config.quad.volume));
  const SegmentRule facet_rule = segment_rule_for_degree(config.quad.facet);
  sys.jump = assemble_jump(mesh, topo, dofs, facet_rule);
  sys.penalty = assemble_penalty(mesh, topo, dofs, facet_rule, config);
  sys.matrix = add_scaled(add_scaled(sys.volume, 1.0, sys.jump, -1.0), 1.0, sys.penalty, 1.0);
  sys.matrix.set_symmetric(true);
  sys.rhs = assemble_rhs(mesh, dofs, phi, triangle_rule(config.quad.rhs));
  return sys;
}

}  // namespace sipdg
