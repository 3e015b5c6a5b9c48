// Per-iteration kernels of the solvers, at the antenna counts used by the
// sweeps. Run with --benchmark_filter to pick one.

#include <benchmark/benchmark.h>

#include "spocs/constraints.hpp"
#include "spocs/hilbert.hpp"
#include "spocs/perturbations.hpp"
#include "spocs/rng.hpp"
#include "spocs/scenario.hpp"
#include "spocs/solver.hpp"

namespace {

using namespace spocs;

HermitianMatrix random_hermitian(Rng& rng, Index n) {
  CMatrix a(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) a(i, j) = rng.complex_normal(1.0);
  }
  return HermitianMatrix::symmetrize(a);
}

MatrixTuple random_tuple(Rng& rng, std::size_t m, Index n) {
  std::vector<HermitianMatrix> out;
  for (std::size_t g = 0; g < m; ++g) out.push_back(random_hermitian(rng, n));
  return MatrixTuple(std::move(out));
}

ProblemInstance sweep_instance(Index n) {
  ScenarioSpec s;
  s.antennas = n;
  s.users = 20;
  s.groups = 2;
  s.cap = PowerCap::of(1.0);
  s.seed = 2024;
  return generate_instance(s);
}

void BM_EigHermitian(benchmark::State& state) {
  Rng rng(1);
  const HermitianMatrix a = random_hermitian(rng, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(a));
}
BENCHMARK(BM_EigHermitian)->Arg(8)->Arg(20)->Arg(50)->Arg(80);

void BM_Perturbation(benchmark::State& state) {
  Rng rng(2);
  const MatrixTuple x = random_tuple(rng, 2, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(perturbation(x, 0.5));
}
BENCHMARK(BM_Perturbation)->Arg(8)->Arg(20)->Arg(50)->Arg(80);

void BM_TStar(benchmark::State& state) {
  const ConstraintSet cs(sweep_instance(state.range(0)));
  const Relaxation mu = Relaxation::standard(cs.users());
  Rng rng(3);
  const MatrixTuple start = random_tuple(rng, 2, state.range(0));
  for (auto _ : state) {
    MatrixTuple x = start;
    cs.apply_t_star(x, mu);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_TStar)->Arg(8)->Arg(20)->Arg(50)->Arg(80);

// One full S-POCS solve from zero on a sweep-style instance.
void BM_SpocsSolve(benchmark::State& state) {
  const ConstraintSet cs(sweep_instance(state.range(0)));
  const SolverConfig cfg = SolverConfig::standard(cs.users());
  std::size_t iterations = 0;
  for (auto _ : state) {
    const auto r = spocs_solve(cs, cfg, cs.zero_point());
    iterations = r.trace.iterations;
    benchmark::DoNotOptimize(r.x);
  }
  state.counters["iterations"] = static_cast<double>(iterations);
}
BENCHMARK(BM_SpocsSolve)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
