#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "sipdg/errors.hpp"
#include "sipdg/format.hpp"
#include "sipdg/harness.hpp"
#include "sipdg/mesh.hpp"

using namespace sipdg;

namespace {

std::string csv_of(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("sipdg_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST(FormatSci, FourSignificantDigits) {
  EXPECT_EQ(format_sci(std::sqrt(2.0) / 40.0), "3.536e-2");
  EXPECT_EQ(format_sci(2.905e-4), "2.905e-4");
  EXPECT_EQ(format_sci(0.1), "1.000e-1");
  EXPECT_EQ(format_sci(12.5), "1.250e1");
  EXPECT_EQ(format_sci(0.0), "0.000e0");
}

TEST(Harness, TableTwoFirstRow) {
  ExperimentSpec spec;
  spec.m = 40;
  spec.quad = QuadratureMode::four_point;
  const ResultRow row = run_experiment(spec);
  ASSERT_TRUE(row.errors.has_value());
  EXPECT_EQ(row.status, SolveStatus::converged);
  EXPECT_EQ(row.dofs, 9600u);
  EXPECT_NEAR(row.errors->l2, 2.905e-4, 0.05 * 2.905e-4);
  EXPECT_NEAR(row.errors->broken_h1, 3.630e-2, 0.05 * 3.630e-2);
  EXPECT_NEAR(row.errors->dg, 4.162e-2, 0.05 * 4.162e-2);
}

TEST(Harness, SolverFailureGivesRowWithoutErrors) {
  ExperimentSpec spec;
  spec.n = spec.m = 8;
  spec.maxit = 2;
  const ResultRow row = run_experiment(spec);
  EXPECT_EQ(row.status, SolveStatus::max_iterations);
  EXPECT_FALSE(row.errors.has_value());
  const std::string csv = csv_of({row});
  EXPECT_NE(csv.find("8,1.768e-1,8.839e-2,,,,,max-iterations,2"), std::string::npos) << csv;
}

TEST(Harness, CsvIsDeterministicAndReadable) {
  ExperimentSpec spec;
  spec.n = 6;
  spec.m = 9;
  const std::vector<ExperimentSpec> specs{spec, spec};
  const auto a = csv_of(sweep(specs));
  const auto b = csv_of(sweep(specs));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.substr(0, a.find('\n')), "param,h,R,L2,H1,P,DG,status,iters");
  std::istringstream is(a);
  const auto rows = read_csv(is);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].param, 9);
  EXPECT_TRUE(rows[0].dg.has_value());
  EXPECT_EQ(rows[0].status, "converged");
}

TEST(Harness, ReadCsvAcceptsEmptyFieldsAndRejectsGarbage) {
  std::istringstream ok("param,h,R,L2,H1,P,DG,status,iters\n200,2.550e-2,1.275e-2,,,,,max-iterations,10\n");
  const auto rows = read_csv(ok);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].l2.has_value());
  std::istringstream bad_header("m,h\n");
  EXPECT_THROW(read_csv(bad_header), InputError);
  std::istringstream bad_row("param,h,R,L2,H1,P,DG,status,iters\n1,x,2,,,,,converged,1\n");
  EXPECT_THROW(read_csv(bad_row), InputError);
}

TEST(Harness, MeshFileRoundTripGivesTheSameRow) {
  const auto dir = scratch_dir("roundtrip");
  ExperimentSpec rect;
  rect.n = 10;
  rect.m = 20;
  const std::string path = (dir / "rect.mesh").string();
  write_mesh_file(path, build_mesh(rect));
  ExperimentSpec file = rect;
  file.mesh = MeshKind::file;
  file.mesh_file = path;
  const ResultRow a = run_experiment(rect);
  const ResultRow b = run_experiment(file);
  ASSERT_TRUE(a.errors && b.errors);
  EXPECT_EQ(a.h, b.h);
  EXPECT_EQ(a.R, b.R);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.errors->l2, b.errors->l2);
  EXPECT_EQ(a.errors->dg, b.errors->dg);
  EXPECT_EQ(b.param, 400);
}

TEST(Harness, SpecValidation) {
  ExperimentSpec s;
  s.eta = -1.0;
  EXPECT_THROW(s.validate(), InputError);
  s = {};
  s.mesh = MeshKind::schwarz_peano;
  EXPECT_THROW(s.validate(), InputError);  // wrong problem domain
  s.problem = "biunit-sine";
  EXPECT_NO_THROW(s.validate());
  s.alpha = 1.0;
  EXPECT_THROW(s.validate(), InputError);
  s = {};
  s.mesh = MeshKind::file;
  EXPECT_THROW(s.validate(), InputError);
  s = {};
  s.solver = SolverKind::sor;
  s.omega = 2.0;
  EXPECT_THROW(s.validate(), InputError);
  EXPECT_THROW(sweep({}), InputError);
  EXPECT_THROW(parse_mesh_kind("hex"), InputError);
  EXPECT_THROW(parse_solver_kind("gmres"), InputError);
}

TEST(Harness, TableSpecs) {
  EXPECT_EQ(table_specs(1).size(), 9u);
  EXPECT_EQ(table_specs(2).size(), 6u);
  EXPECT_EQ(table_specs(3).size(), 7u);
  EXPECT_EQ(table_specs(4).size(), 4u);
  EXPECT_THROW(table_specs(5), InputError);
  for (const auto& s : table_specs(1)) {
    EXPECT_EQ(s.scheme, PenaltyVariant::standard);
    EXPECT_EQ(s.eta, 10.0);
    EXPECT_EQ(s.n, 40);
    EXPECT_EQ(s.quad, QuadratureMode::four_point);
  }
  for (const auto& s : table_specs(4)) {
    EXPECT_EQ(s.mesh, MeshKind::schwarz_peano);
    EXPECT_EQ(s.alpha, 2.0);
    EXPECT_EQ(s.problem, "biunit-sine");
    EXPECT_EQ(s.eta, 0.8);
  }
}

TEST(Harness, SorAndIccgAgree) {
  ExperimentSpec a;
  a.n = a.m = 6;
  ExperimentSpec b = a;
  b.solver = SolverKind::sor;
  b.tol = 1e-12;
  const ResultRow ra = run_experiment(a), rb = run_experiment(b);
  ASSERT_TRUE(ra.errors && rb.errors);
  EXPECT_NEAR(ra.errors->l2, rb.errors->l2, 1e-9 * ra.errors->l2);
}

TEST(PlotData, OneFilePerSeries) {
  const auto dir = scratch_dir("plots");
  ResultRow one;
  one.h = 0.1;
  one.R = 0.2;
  one.status = SolveStatus::converged;
  one.errors = ErrorReport{1e-3, 2e-2, 3e-2, 4e-2, 5e-2};
  ResultRow missing = one;
  missing.errors.reset();
  std::map<double, std::vector<ResultRow>> series{{1.5, {one}}, {2.0, {one, missing, one}}};
  const auto paths = emit_plot_data(series, PlotAxis::R, PlotColumn::h1, dir.string());
  ASSERT_EQ(paths.size(), 2u);
  std::ifstream f(paths[0]);
  std::string line;
  int lines = 0;
  while (std::getline(f, line)) ++lines;
  EXPECT_EQ(lines, 1);
  std::ifstream g(paths[1]);
  double x = 0, y = 0;
  g >> x >> y;
  EXPECT_EQ(x, 0.2);
  EXPECT_EQ(y, 2e-2);
  EXPECT_THROW(emit_plot_data({}, PlotAxis::h, PlotColumn::dg, dir.string()), InputError);
}
