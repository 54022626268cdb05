#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sipdg/analysis.hpp"
#include "sipdg/assembly.hpp"
#include "sipdg/solvers.hpp"

namespace sipdg {

enum class MeshKind { rect, schwarz_peano, file };
enum class SolverKind { iccg, cg, sor };

std::string_view to_string(MeshKind k);
std::string_view to_string(SolverKind k);
MeshKind parse_mesh_kind(std::string_view s);  // rect | sp | file
SolverKind parse_solver_kind(std::string_view s);

/// One end-to-end run: mesh -> assemble -> solve -> measure.
struct ExperimentSpec {
  MeshKind mesh = MeshKind::rect;
  int n = 40;
  int m = 40;
  int N = 20;
  double alpha = 1.5;
  std::string mesh_file;

  PenaltyVariant scheme = PenaltyVariant::adaptive;
  double eta = 0.8;
  int degree = 1;

  SolverKind solver = SolverKind::iccg;
  double tol = 1e-12;
  std::size_t maxit = 0;  // 0 -> 20 * dofs
  double omega = 1.5;

  QuadratureMode quad = QuadratureMode::exact;
  std::string problem = "unit-sine";

  void validate() const;
};

struct ResultRow {
  long param = 0;  // m (rect), N (Schwarz-Peano) or element count (file)
  double h = 0.0;
  double R = 0.0;
  std::optional<ErrorReport> errors;  // absent unless the solver converged
  SolveStatus status = SolveStatus::max_iterations;
  std::size_t iterations = 0;
  std::size_t dofs = 0;
  double seconds = 0.0;
};

Mesh build_mesh(const ExperimentSpec& spec);

ResultRow run_experiment(const ExperimentSpec& spec);

/// Rows in input order; a failing run yields a row with its status.
std::vector<ResultRow> sweep(std::span<const ExperimentSpec> specs);

/// Header "param,h,R,L2,H1,P,DG,status,iters"; absent errors are empty fields.
void write_csv(std::ostream& os, std::span<const ResultRow> rows);

/// Parsed CSV line, for order summaries over previously written results.
struct CsvRow {
  long param = 0;
  double h = 0.0;
  double R = 0.0;
  std::optional<double> l2, h1, penalty, dg;
  std::string status;
  std::size_t iterations = 0;
};

std::vector<CsvRow> read_csv(std::istream& is);

/// Pre-baked reference sweeps 1..4: standard and adaptive penalty on rect(40, m),
/// adaptive penalty on Schwarz-Peano meshes with alpha 1.5 and 2.0.
std::vector<ExperimentSpec> table_specs(int table);

enum class PlotAxis { h, R };
enum class PlotColumn { l2, h1, penalty, dg };

/// Writes one two-column file "<x> <error>" per series into `directory`,
/// named "<prefix>_alpha<alpha>_<column>_vs_<axis>.dat". Rows without
/// errors are skipped. Returns the paths written.
std::vector<std::string> emit_plot_data(const std::map<double, std::vector<ResultRow>>& series,
                                        PlotAxis axis, PlotColumn column,
                                        const std::string& directory,
                                        const std::string& prefix = "series");

double column_value(const ErrorReport& e, PlotColumn c);

}  // namespace sipdg
