#include "sipdg/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sipdg/errors.hpp"
#include "sipdg/format.hpp"
#include "sipdg/mesh.hpp"
#include "sipdg/topology.hpp"

namespace sipdg {

std::string_view to_string(MeshKind k) {
  switch (k) {
    case MeshKind::rect: return "rect";
    case MeshKind::schwarz_peano: return "sp";
    case MeshKind::file: return "file";
  }
  return "?";
}

std::string_view to_string(SolverKind k) {
  switch (k) {
    case SolverKind::iccg: return "iccg";
    case SolverKind::cg: return "cg";
    case SolverKind::sor: return "sor";
  }
  return "?";
}

MeshKind parse_mesh_kind(std::string_view s) {
  if (s == "rect") return MeshKind::rect;
  if (s == "sp" || s == "schwarz-peano") return MeshKind::schwarz_peano;
  if (s == "file") return MeshKind::file;
  throw InputError("unknown mesh kind '" + std::string(s) + "'");
}

SolverKind parse_solver_kind(std::string_view s) {
  if (s == "iccg") return SolverKind::iccg;
  if (s == "cg") return SolverKind::cg;
  if (s == "sor") return SolverKind::sor;
  throw InputError("unknown solver '" + std::string(s) + "'");
}

void ExperimentSpec::validate() const {
  switch (mesh) {
    case MeshKind::rect:
      if (n < 1 || m < 1) throw InputError("rect mesh needs n, m >= 1");
      break;
    case MeshKind::schwarz_peano:
      if (N < 2) throw InputError("Schwarz-Peano mesh needs N >= 2");
      if (!(alpha > 1.0)) throw InputError("Schwarz-Peano mesh needs alpha > 1");
      if (problem != "biunit-sine") throw InputError("Schwarz-Peano meshes cover (-1,1)^2; use problem biunit-sine");
      break;
    case MeshKind::file:
      if (mesh_file.empty()) throw InputError("file mesh needs a path");
      break;
  }
  if (!(eta > 0.0)) throw InputError("eta must be positive");
  if (!(tol > 0.0)) throw InputError("tol must be positive");
  if (solver == SolverKind::sor && !(omega > 0.0 && omega < 2.0))
    throw InputError("omega must lie in (0, 2)");
  SchemeConfig{scheme, eta, degree, QuadratureDegrees::for_degree(degree)}.validate();
  (void)problem_by_id(problem);
}

Mesh build_mesh(const ExperimentSpec& spec) {
  switch (spec.mesh) {
    case MeshKind::rect:
      return generate_rect_mesh(spec.n, spec.m, problem_by_id(spec.problem).domain);
    case MeshKind::schwarz_peano:
      return generate_schwarz_peano_mesh(spec.N, spec.alpha);
    case MeshKind::file:
      return read_mesh_file(spec.mesh_file);
  }
  throw InputError("unknown mesh kind");
}

namespace {

long row_param(const ExperimentSpec& spec, const Mesh& mesh) {
  switch (spec.mesh) {
    case MeshKind::rect: return spec.m;
    case MeshKind::schwarz_peano: return spec.N;
    case MeshKind::file: return static_cast<long>(mesh.num_elements());
  }
  return 0;
}

bool same_rect(const Rect& a, const Rect& b) {
  const double tol = 1e-12 * std::max(1.0, std::max(a.width(), a.height()));
  return distance(a.lo, b.lo) <= tol && distance(a.hi, b.hi) <= tol;
}

}  // namespace

ResultRow run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();

  const ExactSolution exact = problem_by_id(spec.problem);
  const Mesh mesh = build_mesh(spec);
  if (!same_rect(mesh.domain, exact.domain))
    throw InputError("mesh domain does not match the domain of problem '" + spec.problem + "'");

  SchemeConfig config = SchemeConfig::defaults(spec.scheme, spec.degree);
  config.eta = spec.eta;
  if (config.below_coercivity_threshold())
    std::fprintf(stderr, "warning: eta = %g is below the coercivity threshold %g\n", spec.eta,
                 trace_constant(spec.degree) * trace_constant(spec.degree));

  const FacetTopology topo = build_facet_topology(mesh);
  const DofMap dofs = build_dof_map(mesh, spec.degree);
  const AssembledSystem sys = assemble_system(mesh, topo, dofs, config, exact.rhs);

  SolverOptions opts;
  opts.tol = spec.tol;
  opts.max_iterations = spec.maxit;
  SolveReport rep;
  switch (spec.solver) {
    case SolverKind::iccg: rep = iccg_solve(sys.matrix, sys.rhs, opts); break;
    case SolverKind::cg: rep = cg_solve(sys.matrix, sys.rhs, nullptr, opts); break;
    case SolverKind::sor: rep = sor_solve(sys.matrix, sys.rhs, spec.omega, opts); break;
  }

  const MeshQuality q = mesh_quality_report(mesh);
  ResultRow row;
  row.param = row_param(spec, mesh);
  row.h = q.h;
  row.R = q.R;
  row.status = rep.status;
  row.iterations = rep.iterations;
  row.dofs = dofs.size();
  if (rep.converged())
    row.errors = error_norms(mesh, topo, dofs, rep.solution, exact, config,
                             ErrorQuadrature::for_mode(spec.quad, spec.degree));
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::vector<ResultRow> sweep(std::span<const ExperimentSpec> specs) {
  if (specs.empty()) throw InputError("sweep needs at least one spec");
  std::vector<ResultRow> rows;
  rows.reserve(specs.size());
  for (const auto& s : specs) rows.push_back(run_experiment(s));
  return rows;
}

void write_csv(std::ostream& os, std::span<const ResultRow> rows) {
  os << "param,h,R,L2,H1,P,DG,status,iters\n";
  for (const auto& r : rows) {
    os << r.param << ',' << format_sci(r.h) << ',' << format_sci(r.R) << ',';
    if (r.errors) {
      const auto& e = *r.errors;
      os << format_sci(e.l2) << ',' << format_sci(e.broken_h1) << ',' << format_sci(e.penalty)
         << ',' << format_sci(e.dg) << ',';
    } else {
      os << ",,,,";
    }
    os << to_string(r.status) << ',' << r.iterations << '\n';
  }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("bad number '" + s + "' in CSV");
  }
  if (used != s.size()) throw InputError("bad number '" + s + "' in CSV");
  return v;
}

std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

}  // namespace

std::vector<CsvRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InputError("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "param,h,R,L2,H1,P,DG,status,iters") throw InputError("unexpected CSV header");
  std::vector<CsvRow> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_fields(line);
    if (f.size() != 9) throw InputError("CSV row needs 9 fields: " + line);
    CsvRow r;
    r.param = static_cast<long>(parse_double(f[0]));
    r.h = parse_double(f[1]);
    r.R = parse_double(f[2]);
    r.l2 = parse_optional(f[3]);
    r.h1 = parse_optional(f[4]);
    r.penalty = parse_optional(f[5]);
    r.dg = parse_optional(f[6]);
    r.status = f[7];
    r.iterations = static_cast<std::size_t>(parse_double(f[8]));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ExperimentSpec> table_specs(int table) {
  std::vector<ExperimentSpec> specs;
  ExperimentSpec base;
  base.quad = QuadratureMode::four_point;
  switch (table) {
    case 1:
      base.scheme = PenaltyVariant::standard;
      base.eta = 10.0;
      for (int m = 40; m <= 200; m += 20) {
        base.m = m;
        specs.push_back(base);
      }
      break;
    case 2:
      base.scheme = PenaltyVariant::adaptive;
      base.eta = 0.8;
      for (int m : {40, 80, 120, 160, 200, 400}) {
        base.m = m;
        specs.push_back(base);
      }
      break;
    case 3:
    case 4:
      base.mesh = MeshKind::schwarz_peano;
      base.problem = "biunit-sine";
      base.scheme = PenaltyVariant::adaptive;
      base.eta = 0.8;
      base.alpha = table == 3 ? 1.5 : 2.0;
      if (table == 3) {
        for (int N = 20; N <= 140; N += 20) {
          base.N = N;
          specs.push_back(base);
        }
      } else {
        for (int N : {20, 40, 60, 80}) {
          base.N = N;
          specs.push_back(base);
        }
      }
      break;
    default:
      throw InputError("tables are numbered 1 to 4");
  }
  return specs;
}

double column_value(const ErrorReport& e, PlotColumn c) {
  switch (c) {
    case PlotColumn::l2: return e.l2;
    case PlotColumn::h1: return e.broken_h1;
    case PlotColumn::penalty: return e.penalty;
    case PlotColumn::dg: return e.dg;
  }
  return 0.0;
}

namespace {

std::string_view column_name(PlotColumn c) {
  switch (c) {
    case PlotColumn::l2: return "L2";
    case PlotColumn::h1: return "H1";
    case PlotColumn::penalty: return "P";
    case PlotColumn::dg: return "DG";
  }
  return "?";
}

}  // namespace

std::vector<std::string> emit_plot_data(const std::map<double, std::vector<ResultRow>>& series,
                                        PlotAxis axis, PlotColumn column,
                                        const std::string& directory, const std::string& prefix) {
  if (series.empty()) throw InputError("emit_plot_data needs at least one series");
  std::filesystem::create_directories(directory);
  std::vector<std::string> paths;
  for (const auto& [alpha, rows] : series) {
    char name[160];
    std::snprintf(name, sizeof name, "%s_alpha%.2f_%s_vs_%s.dat", prefix.c_str(), alpha,
                  std::string(column_name(column)).c_str(), axis == PlotAxis::h ? "h" : "R");
    const std::string path = (std::filesystem::path(directory) / name).string();
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out.precision(10);
    for (const auto& r : rows) {
      if (!r.errors) continue;
      out << (axis == PlotAxis::h ? r.h : r.R) << ' ' << column_value(*r.errors, column) << '\n';
    }
    paths.push_back(path);
  }
  return paths;
}

}  // namespace sipdg
