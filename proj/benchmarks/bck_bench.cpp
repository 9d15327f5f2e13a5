#include <benchmark/benchmark.h>

#include <random>

#include "bck/graph.hpp"
#include "bck/inner.hpp"
#include "bck/objective.hpp"
#include "bck/outer.hpp"
#include "bck/setfn.hpp"
#include "bck/spectral.hpp"

namespace {

bck::Graph make_graph(int n) {
  return bck::two_moons_graph(n, 10, -1.0, 0.1, 42).graph;
}

bck::Vec random_vec(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  bck::Vec f(static_cast<size_t>(n));
  for (double& x : f) x = dist(rng);
  return f;
}

void bm_total_variation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = make_graph(n);
  const auto f = random_vec(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(bck::total_variation(g, f));
  state.SetItemsProcessed(state.iterations() * g.num_edges());
}
BENCHMARK(bm_total_variation)->Arg(1000)->Arg(10000);

void bm_tv_subgradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = make_graph(n);
  const auto f = random_vec(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(bck::tv_subgradient(g, f));
  state.SetItemsProcessed(state.iterations() * g.num_edges());
}
BENCHMARK(bm_tv_subgradient)->Arg(1000)->Arg(10000);

void bm_lovasz_subgradient(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  bck::Extension ext(bck::BalanceFunction::ratio_cut(n),
                     bck::ExtensionKind::Lovasz);
  const auto f = random_vec(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ext.subgradient(f));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(bm_lovasz_subgradient)->Arg(1000)->Arg(10000)->Arg(100000);

void bm_optimal_threshold(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = make_graph(n);
  const auto b = bck::BalanceFunction::ratio_cheeger(n);
  const auto f = random_vec(n, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(bck::optimal_threshold(g, b, f));
  state.SetItemsProcessed(state.iterations() * (n + g.num_edges()));
}
BENCHMARK(bm_optimal_threshold)->Arg(1000)->Arg(10000);

void bm_inner_pdhg(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = make_graph(n);
  bck::InnerProblem prob;
  prob.graph = &g;
  prob.v = random_vec(n, 4);
  prob.descent_target = -1.0;  // unreachable: run to the gap tolerance
  for (auto _ : state)
    benchmark::DoNotOptimize(bck::solve_inner(prob, 1e-4, 5000));
}
BENCHMARK(bm_inner_pdhg)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void bm_second_eigenvector(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = make_graph(n);
  for (auto _ : state) benchmark::DoNotOptimize(bck::second_eigenvector(g));
}
BENCHMARK(bm_second_eigenvector)
    ->Arg(500)
    ->Arg(2000)
    ->Unit(benchmark::kMillisecond);

void bm_full_solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = make_graph(n);
  const auto b = bck::BalanceFunction::ratio_cheeger(n);
  auto obj = bck::RatioObjective::balanced_cut(
      g, bck::Extension(b, bck::ExtensionKind::Lovasz));
  bck::SolverConfig cfg;
  cfg.cS = 1.0;
  cfg.inner_max_iter = 2000;
  cfg.max_outer = 20;
  cfg.inner_tol_min = 1e-6;
  const auto f0 = bck::random_initialization(obj, cfg.constraint, n, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(bck::ratiodca_prox(g, obj, b, cfg, f0));
}
BENCHMARK(bm_full_solve)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
