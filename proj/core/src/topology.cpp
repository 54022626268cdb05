#include "sipdg/topology.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "sipdg/errors.hpp"

namespace sipdg {
namespace {

struct EdgeRecord {
  std::size_t lo, hi;  // vertex ids, lo < hi
  std::size_t element;
  int local;
};

bool on_same_side(const Rect& r, Vec2 a, Vec2 b) {
  const double s = 1e-12 * std::max(r.width(), r.height());
  auto near = [s](double u, double v) { return std::abs(u - v) <= s; };
  return (near(a.x, r.lo.x) && near(b.x, r.lo.x)) || (near(a.x, r.hi.x) && near(b.x, r.hi.x)) ||
         (near(a.y, r.lo.y) && near(b.y, r.lo.y)) || (near(a.y, r.hi.y) && near(b.y, r.hi.y));
}

}  // namespace

FacetTopology build_facet_topology(const Mesh& mesh) {
  std::vector<EdgeRecord> edges;
  edges.reserve(3 * mesh.num_elements());
  for (std::size_t t = 0; t < mesh.num_elements(); ++t) {
    const Triangle& tri = mesh.triangles[t];
    for (int e = 0; e < 3; ++e) {
      const std::size_t a = tri[static_cast<std::size_t>(e)];
      const std::size_t b = tri[static_cast<std::size_t>((e + 1) % 3)];
      if (a == b) throw TopologyError("triangle " + std::to_string(t) + " repeats a vertex");
      edges.push_back({std::min(a, b), std::max(a, b), t, e});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const EdgeRecord& x, const EdgeRecord& y) {
    return std::tie(x.lo, x.hi, x.element) < std::tie(y.lo, y.hi, y.element);
  });

  FacetTopology topo;
  topo.element_facets.assign(mesh.num_elements(), {no_element, no_element, no_element});
  for (std::size_t i = 0; i < edges.size();) {
    std::size_t j = i + 1;
    while (j < edges.size() && edges[j].lo == edges[i].lo && edges[j].hi == edges[i].hi) ++j;
    const std::size_t count = j - i;
    const EdgeRecord& e1 = edges[i];
    if (count > 2) {
      throw TopologyError("edge (" + std::to_string(e1.lo) + ", " + std::to_string(e1.hi) +
                          ") is shared by more than two elements");
    }

    Facet f;
    Vec2 pa = mesh.vertices[e1.lo], pb = mesh.vertices[e1.hi];
    f.vertices = lex_less(pa, pb) ? std::array{e1.lo, e1.hi} : std::array{e1.hi, e1.lo};
    f.first = e1.element;
    f.local_edge[0] = e1.local;
    f.length = distance(pa, pb);
    if (count == 2) {
      f.kind = FacetKind::interior;
      f.second = edges[i + 1].element;
      f.local_edge[1] = edges[i + 1].local;
    } else {
      if (!on_same_side(mesh.domain, pa, pb)) {
        throw TopologyError("edge (" + std::to_string(e1.lo) + ", " + std::to_string(e1.hi) +
                            ") has one neighbour but is not on the domain boundary");
      }
      f.kind = FacetKind::boundary;
    }
    // outward normal of the first element: its edge runs counterclockwise
    const Triangle& tri = mesh.triangles[f.first];
    const Vec2 p = mesh.vertices[tri[static_cast<std::size_t>(e1.local)]];
    const Vec2 q = mesh.vertices[tri[static_cast<std::size_t>((e1.local + 1) % 3)]];
    const Vec2 d = q - p;
    f.normal = (1.0 / f.length) * Vec2{d.y, -d.x};

    const std::size_t id = topo.facets.size();
    topo.element_facets[f.first][static_cast<std::size_t>(f.local_edge[0])] = id;
    if (f.interior()) {
      topo.element_facets[f.second][static_cast<std::size_t>(f.local_edge[1])] = id;
      ++topo.num_interior;
    } else {
      ++topo.num_boundary;
    }
    topo.facets.push_back(f);
    i = j;
  }
  return topo;
}

FacetWeights facet_weights(const Mesh& mesh, const FacetTopology& topo, std::size_t f) {
  if (f >= topo.size()) throw InputError("facet_weights: facet index out of range");
  const Facet& facet = topo.facets[f];
  FacetWeights w;
  w.length = facet.length;
  w.diameter = facet.length;
  // |T~| = |T| / 3 for the sub-triangle spanned by f and the barycenter of T
  w.penalty_weight = 3.0 * facet.length / mesh.area(facet.first);
  if (facet.interior()) w.penalty_weight += 3.0 * facet.length / mesh.area(facet.second);
  return w;
}

}  // namespace sipdg
