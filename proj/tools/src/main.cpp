// sipdg: command line driver for SIP-DG Poisson experiments.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sipdg/analysis.hpp"
#include "sipdg/errors.hpp"
#include "sipdg/format.hpp"
#include "sipdg/harness.hpp"
#include "sipdg/mesh.hpp"

namespace {

using namespace sipdg;

constexpr int exit_failure_rows = 2;

struct CommonFlags {
  std::string mesh = "rect";
  int n = 40;
  int m = 40;
  int N = 20;
  double alpha = 1.5;
  std::string mesh_file;
  std::string scheme = "new";
  std::optional<double> eta;
  int degree = 1;
  std::string solver = "iccg";
  double tol = 1e-12;
  std::size_t maxit = 0;
  double omega = 1.5;
  std::string quad;
  std::string problem;
  std::string out;
};

void add_mesh_flags(CLI::App* app, CommonFlags& f) {
  app->add_option("--mesh", f.mesh, "Mesh kind: rect | sp | file")->capture_default_str();
  app->add_option("--n", f.n, "Cells in x (rect)")->capture_default_str();
  app->add_option("--m", f.m, "Cells in y (rect)")->capture_default_str();
  app->add_option("--N", f.N, "Base subdivisions (sp)")->capture_default_str();
  app->add_option("--alpha", f.alpha, "Anisotropy exponent (sp)")->capture_default_str();
  app->add_option("--mesh-file", f.mesh_file, "Mesh file (file)");
  app->add_option("--problem", f.problem, "unit-sine | biunit-sine (default by mesh kind)");
}

void add_solve_flags(CLI::App* app, CommonFlags& f) {
  app->add_option("--scheme", f.scheme, "Penalty: std | new")->capture_default_str();
  app->add_option("--eta", f.eta, "Penalty parameter (default 10 for std, 0.8 for new)");
  app->add_option("--degree", f.degree, "Polynomial degree k")->capture_default_str();
  app->add_option("--solver", f.solver, "iccg | cg | sor")->capture_default_str();
  app->add_option("--tol", f.tol, "Relative residual tolerance")->capture_default_str();
  app->add_option("--maxit", f.maxit, "Iteration cap (0: 20 x dofs)")->capture_default_str();
  app->add_option("--omega", f.omega, "SOR relaxation")->capture_default_str();
  app->add_option("--quad", f.quad, "Error quadrature: four-point | exact");
  app->add_option("--out", f.out, "CSV output path (default stdout)");
}

ExperimentSpec to_spec(const CommonFlags& f, QuadratureMode default_quad) {
  ExperimentSpec s;
  s.mesh = parse_mesh_kind(f.mesh);
  s.n = f.n;
  s.m = f.m;
  s.N = f.N;
  s.alpha = f.alpha;
  s.mesh_file = f.mesh_file;
  s.scheme = parse_penalty_variant(f.scheme);
  s.eta = f.eta ? *f.eta : SchemeConfig::defaults(s.scheme).eta;
  s.degree = f.degree;
  s.solver = parse_solver_kind(f.solver);
  s.tol = f.tol;
  s.maxit = f.maxit;
  s.omega = f.omega;
  s.quad = f.quad.empty() ? default_quad : parse_quadrature_mode(f.quad);
  if (!f.problem.empty()) {
    s.problem = f.problem;
  } else if (s.mesh == MeshKind::schwarz_peano) {
    s.problem = "biunit-sine";
  } else if (s.mesh == MeshKind::file) {
    const Mesh mesh = read_mesh_file(f.mesh_file);
    s.problem = mesh.domain.lo.x < -0.5 ? "biunit-sine" : "unit-sine";
  } else {
    s.problem = "unit-sine";
  }
  return s;
}

template <class T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !is.eof()) throw InputError("bad list entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InputError("empty list '" + text + "'");
  return out;
}

void append_orders(std::ostream& os, const std::vector<ResultRow>& rows) {
  std::vector<std::pair<double, double>> by_h[2], by_r[2];
  for (const auto& r : rows) {
    if (!r.errors) continue;
    by_h[0].emplace_back(r.h, r.errors->l2);
    by_h[1].emplace_back(r.h, r.errors->dg);
    by_r[0].emplace_back(r.R, r.errors->l2);
    by_r[1].emplace_back(r.R, r.errors->dg);
  }
  if (by_h[0].size() < 3) return;
  char line[160];
  std::snprintf(line, sizeof line, "# order vs h: L2 %.3f DG %.3f\n", observed_order(by_h[0]),
                observed_order(by_h[1]));
  os << line;
  std::snprintf(line, sizeof line, "# order vs R: L2 %.3f DG %.3f\n", observed_order(by_r[0]),
                observed_order(by_r[1]));
  os << line;
}

int emit_rows(const std::vector<ResultRow>& rows, const std::string& out, bool orders) {
  std::ostringstream csv;
  write_csv(csv, rows);
  if (orders) append_orders(csv, rows);
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream f(out);
    if (!f) throw InputError("cannot write " + out);
    f << csv.str();
  }
  for (const auto& r : rows)
    if (r.status != SolveStatus::converged) return exit_failure_rows;
  return 0;
}

PlotAxis parse_axis(const std::string& s) {
  if (s == "h") return PlotAxis::h;
  if (s == "R") return PlotAxis::R;
  throw InputError("axis must be h or R");
}

PlotColumn parse_column(const std::string& s) {
  if (s == "L2") return PlotColumn::l2;
  if (s == "H1") return PlotColumn::h1;
  if (s == "P") return PlotColumn::penalty;
  if (s == "DG") return PlotColumn::dg;
  throw InputError("column must be L2, H1, P or DG");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SIP-DG Poisson solver with standard and geometry-adaptive penalties"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  auto* run = app.add_subcommand("run", "Solve one configuration and print a CSV row");
  add_mesh_flags(run, run_flags);
  add_solve_flags(run, run_flags);

  CommonFlags sweep_flags;
  std::string m_list, N_list;
  bool sweep_orders = false;
  auto* sw = app.add_subcommand("sweep", "Solve over a list of m (rect) or N (sp) values");
  add_mesh_flags(sw, sweep_flags);
  add_solve_flags(sw, sweep_flags);
  sw->remove_option(sw->get_option("--m"));
  sw->remove_option(sw->get_option("--N"));
  sw->add_option("--m", m_list, "Comma separated m values (rect)");
  sw->add_option("--N", N_list, "Comma separated N values (sp)");
  sw->add_flag("--orders", sweep_orders, "Append observed order lines");

  CommonFlags table_flags[4];
  CLI::App* tables[4];
  for (int t = 0; t < 4; ++t) {
    tables[t] = app.add_subcommand("table" + std::to_string(t + 1),
                                   "Reference sweep " + std::to_string(t + 1));
    auto* sub = tables[t];
    auto& f = table_flags[t];
    sub->add_option("--solver", f.solver, "iccg | cg | sor")->capture_default_str();
    sub->add_option("--tol", f.tol, "Relative residual tolerance")->capture_default_str();
    sub->add_option("--maxit", f.maxit, "Iteration cap (0: 20 x dofs)")->capture_default_str();
    sub->add_option("--omega", f.omega, "SOR relaxation")->capture_default_str();
    sub->add_option("--quad", f.quad, "Error quadrature: four-point | exact");
    sub->add_option("--out", f.out, "CSV output path (default stdout)");
  }

  CommonFlags quality_flags;
  auto* quality = app.add_subcommand("quality", "Print mesh quality metrics");
  add_mesh_flags(quality, quality_flags);

  std::string order_in, order_x = "h", order_col = "DG";
  auto* order = app.add_subcommand("order", "Observed convergence order from a CSV");
  order->add_option("csv", order_in, "CSV produced by run/sweep/table")->required();
  order->add_option("--x", order_x, "h | R")->capture_default_str();
  order->add_option("--col", order_col, "L2 | H1 | P | DG")->capture_default_str();

  CommonFlags plot_flags;
  std::string plot_alphas = "1.2,1.5,1.8,2.0,2.1", plot_N = "20,40,60,80";
  std::string plot_axis = "R", plot_cols = "H1,P", plot_dir = "plots";
  auto* plots = app.add_subcommand("plots", "Error series on Schwarz-Peano families for log-log plots");
  add_solve_flags(plots, plot_flags);
  plots->add_option("--alphas", plot_alphas, "Comma separated alpha values")->capture_default_str();
  plots->add_option("--N", plot_N, "Comma separated N values")->capture_default_str();
  plots->add_option("--axis", plot_axis, "h | R")->capture_default_str();
  plots->add_option("--cols", plot_cols, "Comma separated columns")->capture_default_str();
  plots->add_option("--dir", plot_dir, "Output directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto spec = to_spec(run_flags, QuadratureMode::exact);
      return emit_rows({run_experiment(spec)}, run_flags.out, false);
    }
    if (*sw) {
      std::vector<ExperimentSpec> specs;
      const auto base = to_spec(sweep_flags, QuadratureMode::exact);
      if (base.mesh == MeshKind::rect) {
        if (m_list.empty()) throw InputError("sweep over rect meshes needs --m");
        for (int m : parse_list<int>(m_list)) {
          auto s = base;
          s.m = m;
          specs.push_back(s);
        }
      } else if (base.mesh == MeshKind::schwarz_peano) {
        if (N_list.empty()) throw InputError("sweep over sp meshes needs --N");
        for (int N : parse_list<int>(N_list)) {
          auto s = base;
          s.N = N;
          specs.push_back(s);
        }
      } else {
        throw InputError("sweep supports rect and sp meshes");
      }
      return emit_rows(sweep(specs), sweep_flags.out, sweep_orders);
    }
    for (int t = 0; t < 4; ++t) {
      if (!*tables[t]) continue;
      const auto& f = table_flags[t];
      auto specs = table_specs(t + 1);
      for (auto& s : specs) {
        s.solver = parse_solver_kind(f.solver);
        s.tol = f.tol;
        s.maxit = f.maxit;
        s.omega = f.omega;
        if (!f.quad.empty()) s.quad = parse_quadrature_mode(f.quad);
      }
      return emit_rows(sweep(specs), f.out, false);
    }
    if (*quality) {
      const auto spec = to_spec(quality_flags, QuadratureMode::exact);
      spec.validate();
      const Mesh mesh = build_mesh(spec);
      const MeshQuality q = mesh_quality_report(mesh);
      std::printf("elements %zu\nh %s\nR %s\nshape_regularity %s\nmax_angle %.6f\nmax_R_over_h %s\n",
                  q.elements, format_sci(q.h).c_str(), format_sci(q.R).c_str(),
                  format_sci(q.shape_regularity).c_str(), q.max_angle,
                  format_sci(q.max_circumradius_ratio).c_str());
      return 0;
    }
    if (*order) {
      std::ifstream in(order_in);
      if (!in) throw InputError("cannot read " + order_in);
      const auto rows = read_csv(in);
      const bool by_h = parse_axis(order_x) == PlotAxis::h;
      const PlotColumn col = parse_column(order_col);
      std::vector<std::pair<double, double>> pts;
      for (const auto& r : rows) {
        const auto& v = col == PlotColumn::l2        ? r.l2
                        : col == PlotColumn::h1      ? r.h1
                        : col == PlotColumn::penalty ? r.penalty
                                                     : r.dg;
        if (v) pts.emplace_back(by_h ? r.h : r.R, *v);
      }
      std::printf("%.4f\n", observed_order(pts));
      return 0;
    }
    if (*plots) {
      const auto base = [&] {
        auto f = plot_flags;
        f.mesh = "sp";
        return to_spec(f, QuadratureMode::exact);
      }();
      std::map<double, std::vector<ResultRow>> series;
      bool failed = false;
      for (double alpha : parse_list<double>(plot_alphas)) {
        std::vector<ExperimentSpec> specs;
        for (int N : parse_list<int>(plot_N)) {
          auto s = base;
          s.alpha = alpha;
          s.N = N;
          specs.push_back(s);
        }
        auto rows = sweep(specs);
        for (const auto& r : rows) failed = failed || r.status != SolveStatus::converged;
        series.emplace(alpha, std::move(rows));
      }
      std::vector<std::string> cols;
      {
        std::stringstream ss(plot_cols);
        std::string c;
        while (std::getline(ss, c, ',')) cols.push_back(c);
      }
      for (const auto& c : cols)
        for (const auto& p : emit_plot_data(series, parse_axis(plot_axis), parse_column(c), plot_dir))
          std::printf("%s\n", p.c_str());
      return failed ? exit_failure_rows : 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
