#include "sipdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sipdg/errors.hpp"

namespace sipdg {

double Mesh::area(std::size_t t) const {
  const auto [a, b, c] = corners(t);
  return 0.5 * signed_area2(a, b, c);
}

Vec2 Mesh::barycenter(std::size_t t) const {
  const auto [a, b, c] = corners(t);
  return (1.0 / 3.0) * (a + b + c);
}

Mesh generate_rect_mesh(int n, int m, const Rect& rect) {
  if (n < 1 || m < 1) {
    throw InputError("generate_rect_mesh: n and m must be positive");
  }
  if (!rect.valid()) {
    throw InputError("generate_rect_mesh: rectangle must have positive width and height");
  }
  Mesh mesh;
  mesh.domain = rect;
  const auto nx = static_cast<std::size_t>(n);
  const auto ny = static_cast<std::size_t>(m);
  mesh.vertices.reserve((nx + 1) * (ny + 1));
  for (std::size_t j = 0; j <= ny; ++j) {
    const double y = j == ny ? rect.hi.y
                             : rect.lo.y + rect.height() * static_cast<double>(j) / m;
    for (std::size_t i = 0; i <= nx; ++i) {
      const double x = i == nx ? rect.hi.x
                               : rect.lo.x + rect.width() * static_cast<double>(i) / n;
      mesh.vertices.push_back({x, y});
    }
  }
  auto vid = [nx](std::size_t i, std::size_t j) { return j * (nx + 1) + i; };
  mesh.triangles.reserve(2 * nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t a = vid(i, j), b = vid(i + 1, j);
      const std::size_t c = vid(i + 1, j + 1), d = vid(i, j + 1);
      mesh.triangles.push_back({a, b, c});
      mesh.triangles.push_back({a, c, d});
    }
  }
  return mesh;
}

int schwarz_peano_strip_count(int N, double alpha) {
  if (N < 2) throw InputError("generate_schwarz_peano_mesh: N must be at least 2");
  if (!(alpha > 1.0)) throw InputError("generate_schwarz_peano_mesh: alpha must exceed 1");
  // 2 / h^alpha = 2 (N/2)^alpha; the relative slack keeps exact integers
  // (e.g. N = 40, alpha = 2 -> 800) from rounding down.
  const double rows = 2.0 * std::pow(0.5 * N, alpha);
  const double k = std::floor(rows * (1.0 + 1e-12));
  if (k < 1.0) {
    throw InputError("generate_schwarz_peano_mesh: strip height exceeds the domain");
  }
  if (k > 1e8) throw InputError("generate_schwarz_peano_mesh: too many strips");
  return static_cast<int>(k);
}

Mesh generate_schwarz_peano_mesh(int N, double alpha) {
  const int strips = schwarz_peano_strip_count(N, alpha);
  const auto n = static_cast<std::size_t>(N);
  const auto K = static_cast<std::size_t>(strips);
  const double h = 2.0 / N;

  Mesh mesh;
  mesh.domain = Rect::biunit_square();

  // Line k is "full" (N+1 nodes) when k is even, "offset" (N+2 nodes) otherwise.
  std::vector<std::size_t> line_start(K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    line_start[k] = mesh.vertices.size();
    const double y = k == K ? 1.0 : -1.0 + 2.0 * static_cast<double>(k) / strips;
    if (k % 2 == 0) {
      for (std::size_t i = 0; i <= n; ++i) {
        const double x = i == n ? 1.0 : -1.0 + static_cast<double>(i) * h;
        mesh.vertices.push_back({x, y});
      }
    } else {
      mesh.vertices.push_back({-1.0, y});
      for (std::size_t i = 0; i < n; ++i) {
        mesh.vertices.push_back({-1.0 + (static_cast<double>(i) + 0.5) * h, y});
      }
      mesh.vertices.push_back({1.0, y});
    }
  }

  mesh.triangles.reserve(K * (2 * n + 1));
  for (std::size_t k = 0; k < K; ++k) {
    const std::size_t b0 = line_start[k];
    const std::size_t t0 = line_start[k + 1];
    auto b = [b0](std::size_t i) { return b0 + i; };
    auto t = [t0](std::size_t i) { return t0 + i; };
    if (k % 2 == 0) {
      // full bottom line, offset top line
      mesh.triangles.push_back({b(0), t(1), t(0)});
      for (std::size_t i = 0; i < n; ++i) {
        mesh.triangles.push_back({b(i), b(i + 1), t(i + 1)});
        if (i + 1 < n) mesh.triangles.push_back({b(i + 1), t(i + 2), t(i + 1)});
      }
      mesh.triangles.push_back({b(n), t(n + 1), t(n)});
    } else {
      // offset bottom line, full top line
      mesh.triangles.push_back({b(0), b(1), t(0)});
      for (std::size_t i = 0; i < n; ++i) {
        mesh.triangles.push_back({b(i + 1), t(i + 1), t(i)});
        if (i + 1 < n) mesh.triangles.push_back({b(i + 1), b(i + 2), t(i + 1)});
      }
      mesh.triangles.push_back({b(n), b(n + 1), t(n)});
    }
  }
  return mesh;
}

double total_area(const Mesh& mesh) {
  double sum = 0.0;
  for (std::size_t t = 0; t < mesh.num_elements(); ++t) sum += mesh.area(t);
  return sum;
}

void validate_mesh(const Mesh& mesh, double tol) {
  for (std::size_t t = 0; t < mesh.num_elements(); ++t) {
    for (std::size_t v : mesh.triangles[t]) {
      if (v >= mesh.num_vertices()) {
        throw InputError("mesh: triangle " + std::to_string(t) + " references a missing vertex");
      }
    }
    if (!(mesh.area(t) > 0.0)) {
      throw DegenerateElementError("mesh: triangle " + std::to_string(t) +
                                   " has nonpositive signed area");
    }
  }
  const double expected = mesh.domain.area();
  if (std::abs(total_area(mesh) - expected) > tol * expected) {
    throw InputError("mesh: element areas do not cover the domain");
  }
}

ElementMetrics triangle_metrics(Vec2 a, Vec2 b, Vec2 c) {
  const double area = 0.5 * signed_area2(a, b, c);
  if (!(area > 0.0)) {
    throw DegenerateElementError("triangle has zero or negative signed area");
  }
  // edge i is opposite vertex i
  const std::array<Vec2, 3> p{a, b, c};
  std::array<double, 3> len{distance(b, c), distance(c, a), distance(a, b)};
  std::size_t longest = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (len[i] > len[longest]) longest = i;
  }
  const Vec2 u = p[(longest + 1) % 3] - p[longest];
  const Vec2 v = p[(longest + 2) % 3] - p[longest];

  std::array<double, 3> sorted = len;
  std::sort(sorted.begin(), sorted.end());

  ElementMetrics m;
  m.area = area;
  m.diameter = sorted[2];
  m.inscribed_diameter = 4.0 * area / (len[0] + len[1] + len[2]);
  m.circumradius = sorted[0] * sorted[1] * sorted[2] / (4.0 * area);
  m.max_angle = std::atan2(std::abs(cross(u, v)), dot(u, v));
  return m;
}

ElementMetrics element_metrics(const Mesh& mesh, std::size_t t) {
  if (t >= mesh.num_elements()) throw InputError("element_metrics: index out of range");
  const auto [a, b, c] = mesh.corners(t);
  return triangle_metrics(a, b, c);
}

MeshQuality mesh_quality_report(const Mesh& mesh) {
  MeshQuality q;
  q.elements = mesh.num_elements();
  for (std::size_t t = 0; t < mesh.num_elements(); ++t) {
    const ElementMetrics m = element_metrics(mesh, t);
    q.h = std::max(q.h, m.diameter);
    q.R = std::max(q.R, m.circumradius);
    q.shape_regularity = std::max(q.shape_regularity, m.diameter / m.inscribed_diameter);
    q.max_angle = std::max(q.max_angle, m.max_angle);
    q.max_circumradius_ratio = std::max(q.max_circumradius_ratio, m.circumradius / m.diameter);
  }
  return q;
}

}  // namespace sipdg
