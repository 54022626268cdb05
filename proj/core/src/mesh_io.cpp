#include <algorithm>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>

#include "sipdg/errors.hpp"
#include "sipdg/mesh.hpp"

namespace sipdg {

void write_mesh(std::ostream& os, const Mesh& mesh) {
  os << mesh.num_vertices() << ' ' << mesh.num_elements() << '\n';
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const Vec2& v : mesh.vertices) os << v.x << ' ' << v.y << '\n';
  for (const Triangle& t : mesh.triangles) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

Mesh read_mesh(std::istream& is) {
  long long nv = -1, nt = -1;
  if (!(is >> nv >> nt) || nv < 3 || nt < 1) {
    throw InputError("read_mesh: bad header, expected 'nv nt'");
  }
  Mesh mesh;
  mesh.vertices.resize(static_cast<std::size_t>(nv));
  for (Vec2& v : mesh.vertices) {
    if (!(is >> v.x >> v.y)) throw InputError("read_mesh: truncated vertex list");
  }
  mesh.triangles.resize(static_cast<std::size_t>(nt));
  for (Triangle& t : mesh.triangles) {
    long long i, j, k;
    if (!(is >> i >> j >> k)) throw InputError("read_mesh: truncated triangle list");
    if (i < 0 || j < 0 || k < 0 || i >= nv || j >= nv || k >= nv) {
      throw InputError("read_mesh: vertex index out of range");
    }
    t = {static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k)};
  }
  Vec2 lo = mesh.vertices.front(), hi = lo;
  for (const Vec2& v : mesh.vertices) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
  }
  mesh.domain = {lo, hi};
  if (!mesh.domain.valid()) throw InputError("read_mesh: vertices span a degenerate box");
  validate_mesh(mesh, 1e-10);
  return mesh;
}

void write_mesh_file(const std::string& path, const Mesh& mesh) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot open mesh file for writing: " + path);
  write_mesh(os, mesh);
}

Mesh read_mesh_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open mesh file: " + path);
  return read_mesh(is);
}

}  // namespace sipdg
