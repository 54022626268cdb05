#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "sipdg/geometry.hpp"

namespace sipdg {

using Triangle = std::array<std::size_t, 3>;

/// Conforming triangulation of an axis-aligned rectangle. Triangles are
/// stored counterclockwise. Immutable once built by a generator or reader.
struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<Triangle> triangles;
  Rect domain;

  std::size_t num_vertices() const { return vertices.size(); }
  std::size_t num_elements() const { return triangles.size(); }
  std::array<Vec2, 3> corners(std::size_t t) const {
    const auto& tri = triangles[t];
    return {vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]};
  }
  /// Signed area of element t (positive for a valid mesh).
  double area(std::size_t t) const;
  Vec2 barycenter(std::size_t t) const;
};

/// n x m cells on `rect`, each split by its bottom-left to top-right diagonal.
Mesh generate_rect_mesh(int n, int m, const Rect& rect = Rect::unit_square());

/// Number of horizontal strips floor(2 / h^alpha) with h = 2/N.
int schwarz_peano_strip_count(int N, double alpha);

/// Strips of thin isosceles triangles on (-1,1)^2: base 2/N, strip height
/// 2/floor(2/h^alpha). Node lines alternate between the full lattice
/// -1 + i h and the midpoint lattice -1 + h/2 + i h (plus the corners x = +-1),
/// so each strip closes with two right-angled half triangles.
Mesh generate_schwarz_peano_mesh(int N, double alpha);

/// Throws DegenerateElementError for nonpositive areas and InputError when
/// the element areas do not sum to the domain area (relative `tol`).
void validate_mesh(const Mesh& mesh, double tol = 1e-12);

double total_area(const Mesh& mesh);

struct ElementMetrics {
  double area = 0.0;
  double diameter = 0.0;            // h_T, longest edge
  double inscribed_diameter = 0.0;  // rho_T
  double circumradius = 0.0;        // R_T = l1 l2 h_T / (4 |T|)
  double max_angle = 0.0;           // radians
};

ElementMetrics triangle_metrics(Vec2 a, Vec2 b, Vec2 c);
ElementMetrics element_metrics(const Mesh& mesh, std::size_t t);

struct MeshQuality {
  std::size_t elements = 0;
  double h = 0.0;                 // max h_T
  double R = 0.0;                 // max R_T
  double shape_regularity = 0.0;  // max h_T / rho_T
  double max_angle = 0.0;         // max inner angle, radians
  double max_circumradius_ratio = 0.0;  // max R_T / h_T
};

MeshQuality mesh_quality_report(const Mesh& mesh);

// ASCII format: "nv nt", nv lines "x y", nt lines "i j k" (0-based, ccw).
void write_mesh(std::ostream& os, const Mesh& mesh);
Mesh read_mesh(std::istream& is);
void write_mesh_file(const std::string& path, const Mesh& mesh);
Mesh read_mesh_file(const std::string& path);

}  // namespace sipdg
