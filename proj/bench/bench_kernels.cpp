// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS=N to vary the
// thread count.

#include <benchmark/benchmark.h>

#include <Eigen/Core>

#include "acsparse/fiedler.hpp"
#include "acsparse/kernels.hpp"
#include "acsparse/mac.hpp"
#include "acsparse/testkit/oracle.hpp"

using namespace acsparse;

namespace {

SparsificationProblem problem(Index n, Index m, Index k = 0) {
  testkit::RandomProblemSpec spec;
  spec.n = n;
  spec.m = m;
  spec.seed = 42;
  spec.fixed_topology = testkit::FixedTopology::RandomTree;
  return testkit::random_problem(spec, k);
}

Execution mode(const benchmark::State& state) {
  return state.range(1) ? Execution::Parallel : Execution::Serial;
}

void BM_EdgeQuadraticForms(benchmark::State& state) {
  const auto p = problem(std::max<Index>(state.range(0) / 2, 2), state.range(0));
  const Eigen::VectorXd y = Eigen::VectorXd::Random(p.num_nodes());
  Eigen::VectorXd out;
  for (auto _ : state) {
    kernels::edge_quadratic_forms(mode(state), p.candidate_edges(), y, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EdgeQuadraticForms)->ArgsProduct({{10'000, 1'000'000}, {0, 1}})->ArgNames({"m", "parallel"});

void BM_SymmetricSpmm(benchmark::State& state) {
  const auto p = problem(state.range(0), state.range(0));
  const SparseMatrix L = full_laplacian(p);
  const Eigen::MatrixXd X = Eigen::MatrixXd::Random(p.num_nodes(), 8);
  Eigen::MatrixXd Y;
  for (auto _ : state) {
    kernels::symmetric_spmm(mode(state), L, X, Y);
    benchmark::DoNotOptimize(Y.data());
  }
}
BENCHMARK(BM_SymmetricSpmm)->ArgsProduct({{10'000, 200'000}, {0, 1}})->ArgNames({"n", "parallel"});

void BM_BruteForce(benchmark::State& state) {
  const auto p = problem(10, 14, 5);
  for (auto _ : state) benchmark::DoNotOptimize(testkit::brute_force_optimum(p, mode(state)).p_star);
}
BENCHMARK(BM_BruteForce)->ArgsProduct({{0}, {0, 1}})->ArgNames({"_", "parallel"})->Unit(benchmark::kMillisecond);

void BM_MacSolve(benchmark::State& state) {
  const auto p = problem(state.range(0), state.range(0) + state.range(0) / 16, state.range(0) / 4);
  SolverConfig cfg;
  cfg.fiedler.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(mac(p, cfg).f_rounded);
}
BENCHMARK(BM_MacSolve)->ArgsProduct({{1728, 10000}, {0, 1}})->ArgNames({"n", "parallel"})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
