#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "sipdg/errors.hpp"
#include "sipdg/mesh.hpp"

using namespace sipdg;

namespace {

// Circumradius of an isosceles triangle with base b and height a.
double isosceles_circumradius(double base, double height) {
  return (height * height + base * base / 4.0) / (2.0 * height);
}

}  // namespace

TEST(RectMesh, SingleCellHasTwoTriangles) {
  const Mesh mesh = generate_rect_mesh(1, 1);
  EXPECT_EQ(mesh.num_vertices(), 4u);
  EXPECT_EQ(mesh.num_elements(), 2u);
  for (std::size_t t = 0; t < mesh.num_elements(); ++t) EXPECT_GT(mesh.area(t), 0.0);
}

TEST(RectMesh, AreasCoverTheDomain) {
  const Rect r{{-1.0, 2.0}, {3.0, 2.5}};
  const Mesh mesh = generate_rect_mesh(7, 5, r);
  EXPECT_EQ(mesh.num_elements(), 70u);
  EXPECT_NEAR(total_area(mesh), r.area(), 1e-12 * r.area());
  EXPECT_NO_THROW(validate_mesh(mesh));
}

TEST(RectMesh, RejectsBadInput) {
  EXPECT_THROW(generate_rect_mesh(0, 3), InputError);
  EXPECT_THROW(generate_rect_mesh(3, -1), InputError);
  EXPECT_THROW(generate_rect_mesh(2, 2, Rect{{0, 0}, {0, 1}}), InputError);
}

TEST(RectMesh, DiameterAndCircumradiusFollowTheCellDiagonal) {
  // One diagonal per cell: every triangle is right angled with legs 1/n, 1/m,
  // so h = sqrt(1/n^2 + 1/m^2) and R = h / 2.
  for (int m : {40, 80, 120, 200, 400}) {
    const MeshQuality q = mesh_quality_report(generate_rect_mesh(40, m));
    const double h = std::hypot(1.0 / 40.0, 1.0 / m);
    EXPECT_NEAR(q.h, h, 1e-14) << "m=" << m;
    EXPECT_NEAR(q.R, h / 2.0, 1e-14) << "m=" << m;
    EXPECT_NEAR(q.max_angle, std::numbers::pi / 2.0, 1e-12);
  }
}

TEST(RectMesh, GeometryAtFortyByForty) {
  const MeshQuality q = mesh_quality_report(generate_rect_mesh(40, 40));
  EXPECT_NEAR(q.h, 3.536e-2, 5e-6);
  EXPECT_NEAR(q.R, 1.768e-2, 5e-6);
}

TEST(ElementMetrics, RightTriangle) {
  const ElementMetrics e = triangle_metrics({0, 0}, {1.0 / 40, 0}, {0, 1.0 / 40});
  EXPECT_NEAR(e.diameter, std::sqrt(2.0) / 40.0, 1e-15);
  EXPECT_NEAR(e.circumradius, std::sqrt(2.0) / 80.0, 1e-15);
  EXPECT_NEAR(e.area, 0.5 / 1600.0, 1e-18);
}

TEST(ElementMetrics, EquilateralTriangle) {
  const double s = 0.3;
  const ElementMetrics e = triangle_metrics({0, 0}, {s, 0}, {s / 2, s * std::sqrt(3.0) / 2});
  EXPECT_NEAR(e.circumradius, s / std::sqrt(3.0), 1e-15);
  // inradius s / (2 sqrt 3), so h / rho = sqrt 3
  EXPECT_NEAR(e.diameter / e.inscribed_diameter, std::sqrt(3.0), 1e-13);
  EXPECT_NEAR(e.max_angle, std::numbers::pi / 3.0, 1e-13);
}

TEST(ElementMetrics, ThinIsoscelesMatchesClosedForm) {
  const double base = 0.1, height = 2.0 / 63.0;
  const ElementMetrics e = triangle_metrics({0, 0}, {base, 0}, {base / 2, height});
  EXPECT_NEAR(e.circumradius, isosceles_circumradius(base, height), 1e-15);
  EXPECT_NEAR(e.circumradius, 5.525e-2, 5e-6);
}

TEST(ElementMetrics, BasicInequalities) {
  const ElementMetrics e = triangle_metrics({0, 0}, {1, 0}, {0.3, 0.05});
  EXPECT_LE(e.inscribed_diameter, e.diameter);
  EXPECT_GE(e.circumradius, e.diameter / 2.0 - 1e-15);
  EXPECT_GT(e.max_angle, std::numbers::pi / 2.0);
}

TEST(SchwarzPeano, StripCountKeepsExactIntegers) {
  EXPECT_EQ(schwarz_peano_strip_count(20, 1.5), 63);   // 2 * 10^1.5 = 63.2
  EXPECT_EQ(schwarz_peano_strip_count(40, 2.0), 800);  // exactly 2 * 20^2
  EXPECT_EQ(schwarz_peano_strip_count(20, 2.0), 200);
}

TEST(SchwarzPeano, ValidConformingMesh) {
  const Mesh mesh = generate_schwarz_peano_mesh(20, 1.5);
  EXPECT_EQ(mesh.num_elements(), 63u * (2 * 20 + 1));
  EXPECT_NO_THROW(validate_mesh(mesh));
  EXPECT_NEAR(total_area(mesh), 4.0, 4e-12);
}

TEST(SchwarzPeano, NearIsotropicLimit) {
  const Mesh mesh = generate_schwarz_peano_mesh(4, 1.0 + 1e-9);
  EXPECT_EQ(schwarz_peano_strip_count(4, 1.0 + 1e-9), 4);
  EXPECT_NO_THROW(validate_mesh(mesh));
  const MeshQuality q = mesh_quality_report(mesh);
  // base 0.5, height 0.5: the legs are the longest edges
  EXPECT_NEAR(q.h, std::hypot(0.25, 0.5), 1e-12);
  EXPECT_LT(q.max_angle, std::numbers::pi / 2.0 + 1e-12);
}

TEST(SchwarzPeano, DiameterIsBaseAndCircumradiusIsIsosceles) {
  for (auto [N, alpha] : {std::pair{20, 1.5}, {40, 1.5}, {20, 2.0}, {40, 2.0}}) {
    const MeshQuality q = mesh_quality_report(generate_schwarz_peano_mesh(N, alpha));
    const double h = 2.0 / N;
    const double height = 2.0 / schwarz_peano_strip_count(N, alpha);
    EXPECT_NEAR(q.h, h, 1e-14) << N << " " << alpha;
    EXPECT_NEAR(q.R, isosceles_circumradius(h, height), 1e-12) << N << " " << alpha;
  }
}

TEST(SchwarzPeano, RejectsBadInput) {
  EXPECT_THROW(generate_schwarz_peano_mesh(1, 1.5), InputError);
  EXPECT_THROW(generate_schwarz_peano_mesh(10, 1.0), InputError);
  EXPECT_THROW(generate_schwarz_peano_mesh(0, 1.5), InputError);
  EXPECT_THROW(generate_schwarz_peano_mesh(10, 0.5), InputError);
}

TEST(MeshValidation, RejectsClockwiseTriangle) {
  Mesh mesh = generate_rect_mesh(1, 1);
  std::swap(mesh.triangles[0][1], mesh.triangles[0][2]);
  EXPECT_THROW(validate_mesh(mesh), DegenerateElementError);
}

TEST(MeshValidation, RejectsMissingCoverage) {
  Mesh mesh = generate_rect_mesh(2, 2);
  mesh.triangles.pop_back();
  EXPECT_THROW(validate_mesh(mesh), InputError);
}

TEST(MeshIo, RoundTripIsExact) {
  const Mesh mesh = generate_schwarz_peano_mesh(6, 1.5);
  std::stringstream ss;
  write_mesh(ss, mesh);
  const Mesh back = read_mesh(ss);
  ASSERT_EQ(back.num_vertices(), mesh.num_vertices());
  ASSERT_EQ(back.num_elements(), mesh.num_elements());
  for (std::size_t i = 0; i < mesh.num_vertices(); ++i) EXPECT_EQ(back.vertices[i], mesh.vertices[i]);
  for (std::size_t t = 0; t < mesh.num_elements(); ++t) EXPECT_EQ(back.triangles[t], mesh.triangles[t]);
  EXPECT_EQ(back.domain.lo, mesh.domain.lo);
  EXPECT_EQ(back.domain.hi, mesh.domain.hi);
}

TEST(MeshIo, HeaderAndLayout) {
  std::stringstream ss;
  write_mesh(ss, generate_rect_mesh(1, 1));
  int nv = 0, nt = 0;
  ss >> nv >> nt;
  EXPECT_EQ(nv, 4);
  EXPECT_EQ(nt, 2);
}

TEST(MeshIo, RejectsMalformedInput) {
  std::stringstream bad_index("3 1\n0 0\n1 0\n0 1\n0 1 5\n");
  EXPECT_THROW(read_mesh(bad_index), InputError);
  std::stringstream truncated("3 1\n0 0\n1 0\n");
  EXPECT_THROW(read_mesh(truncated), InputError);
  std::stringstream clockwise("3 1\n0 0\n0 1\n1 0\n0 1 2\n");
  EXPECT_ANY_THROW(read_mesh(clockwise));
}
