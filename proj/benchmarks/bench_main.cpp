#include <benchmark/benchmark.h>

#include "sipdg/assembly.hpp"
#include "sipdg/problems.hpp"
#include "sipdg/solvers.hpp"

using namespace sipdg;

namespace {

Mesh bench_mesh(int arg) {
  return arg > 0 ? generate_rect_mesh(40, arg) : generate_schwarz_peano_mesh(-arg, 1.5);
}

void BM_Topology(benchmark::State& state) {
  const Mesh mesh = bench_mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_facet_topology(mesh));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(mesh.num_elements()));
}

void BM_AssembleSystem(benchmark::State& state) {
  const Mesh mesh = bench_mesh(static_cast<int>(state.range(0)));
  const FacetTopology topo = build_facet_topology(mesh);
  const DofMap dofs = build_dof_map(mesh, 1);
  const ExactSolution exact = sine_problem(mesh.domain);
  const SchemeConfig cfg = SchemeConfig::defaults(PenaltyVariant::adaptive);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_system(mesh, topo, dofs, cfg, exact.rhs));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(mesh.num_elements()));
}

struct System {
  AssembledSystem sys;
  explicit System(int arg) {
    const Mesh mesh = bench_mesh(arg);
    const FacetTopology topo = build_facet_topology(mesh);
    const DofMap dofs = build_dof_map(mesh, 1);
    sys = assemble_system(mesh, topo, dofs, SchemeConfig::defaults(PenaltyVariant::adaptive),
                          sine_problem(mesh.domain).rhs);
  }
};

void BM_Matvec(benchmark::State& state) {
  const System s(static_cast<int>(state.range(0)));
  std::vector<double> y(s.sys.size());
  for (auto _ : state) {
    s.sys.matrix.multiply(s.sys.rhs, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.sys.matrix.nnz()));
}

void BM_Ic0Factor(benchmark::State& state) {
  const System s(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ic0_factor(s.sys.matrix));
}

void BM_Ic0Apply(benchmark::State& state) {
  const System s(static_cast<int>(state.range(0)));
  const IncompleteCholesky ic = ic0_factor(s.sys.matrix);
  std::vector<double> z(s.sys.size());
  for (auto _ : state) {
    ic.apply(s.sys.rhs, z);
    benchmark::DoNotOptimize(z.data());
  }
}

void BM_IccgSolve(benchmark::State& state) {
  const System s(static_cast<int>(state.range(0)));
  std::size_t iterations = 0;
  for (auto _ : state) {
    const SolveReport r = iccg_solve(s.sys.matrix, s.sys.rhs);
    iterations = r.iterations;
    benchmark::DoNotOptimize(r.solution.data());
  }
  state.counters["cg_iterations"] = static_cast<double>(iterations);
}

// Positive arguments: rect mesh 40 x m. Negative: Schwarz-Peano N = -arg, alpha = 1.5.
BENCHMARK(BM_Topology)->Arg(40)->Arg(400)->Arg(-40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleSystem)->Arg(40)->Arg(400)->Arg(-40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Matvec)->Arg(400)->Arg(-40)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Ic0Factor)->Arg(400)->Arg(-40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Ic0Apply)->Arg(400)->Arg(-40)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_IccgSolve)->Arg(40)->Arg(400)->Arg(-40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
