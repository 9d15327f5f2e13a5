#include <doctest.h>

#include <cstdlib>
#include <random>

#include "bck/oracle.hpp"
#include "bck/outer.hpp"
#include "bck/spectral.hpp"
#include "test_helpers.hpp"

using namespace bck;
using namespace bck::testing;

namespace {

RatioObjective lovasz_objective(const Graph& g, const BalanceFunction& b) {
  return RatioObjective::balanced_cut(g, Extension(b, ExtensionKind::Lovasz));
}

}  // namespace

TEST_CASE("optimal threshold examples") {
  Graph g = path_graph(3);
  auto rc = BalanceFunction::ratio_cut(3);
  auto [set, ratio] = optimal_threshold(g, rc, {0.1, 0.9, 1.0});
  CHECK(ratio == doctest::Approx(0.5));
  // {2} and {1,2} tie at 0.5; ties go to the smaller set
  CHECK(set == make_set(3, {2}));

  // ties broken toward the smaller set: f = (0,1,1) on K3, thresholds give
  // {1,2} (cut 2, bal 2) only; f = (0,0,1) gives {2} ratio 1.
  Graph k3 = complete_graph(3);
  auto [s2, r2] = optimal_threshold(k3, rc, {0, 0, 1});
  CHECK(r2 == doctest::Approx(1.0));
  CHECK(s2.count() == 1);
}

TEST_CASE("optimal threshold never exceeds the ratio of any threshold set") {
  std::mt19937_64 rng(60);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = random_connected_graph(12, 12, 300 + trial);
    for (auto b : {BalanceFunction::ratio_cut(12),
                   BalanceFunction::ratio_cheeger(12)}) {
      Vec f = random_vector(12, rng);
      auto [set, ratio] = optimal_threshold(g, b, f);
      CHECK(set.count() > 0);
      CHECK(set.count() < 12);
      CHECK(cut_value(g, set) / b.value(set) == doctest::Approx(ratio));
      for (int i = 0; i < 12; ++i) {
        VertexSet c(12);
        for (int j = 0; j < 12; ++j)
          if (f[j] > f[i]) c.insert(j);
        if (c.count() == 0 || c.count() == 12) continue;
        CHECK(ratio <= cut_value(g, c) / b.value(c) + 1e-10);
      }
    }
  }
}

TEST_CASE("thresholding never exceeds the relaxed ratio") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    Graph g = random_connected_graph(10, 9, 400 + trial);
    auto b = (trial % 2 == 0) ? BalanceFunction::ratio_cut(10)
                              : BalanceFunction::ratio_cheeger(10);
    auto obj = lovasz_objective(g, b);
    Vec f = random_vector(10, rng);
    auto [set, ratio] = optimal_threshold(g, b, f);
    CHECK(ratio <= obj.ratio_value(f) + 1e-10);
  }
}

TEST_CASE("two-vertex run terminates immediately at the optimum") {
  Graph g = path_graph(2);
  auto b = BalanceFunction::ratio_cut(2);
  auto obj = lovasz_objective(g, b);
  SolverConfig cfg;
  auto res = ratiodca_prox(g, obj, b, cfg, {-1.0, 1.0});
  CHECK(res.terminated);
  CHECK(res.lambda_star == doctest::Approx(1.0));
  CHECK(res.best_set_ratio == doctest::Approx(1.0));
}

TEST_CASE("path graph from spectral initialization finds the optimum") {
  Graph g = path_graph(3);
  auto b = BalanceFunction::ratio_cut(3);
  auto obj = lovasz_objective(g, b);
  SolverConfig cfg;
  Vec f0 = cfg.constraint.normalize(second_eigenvector(g));
  auto res = ratiodca_prox(g, obj, b, cfg, f0);
  CHECK(res.best_set_ratio == doctest::Approx(0.5));
}

TEST_CASE("lambda trace is strictly decreasing and iterates stay feasible") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_connected_graph(14, 14, 500 + trial);
    auto b = (trial % 2 == 0) ? BalanceFunction::ratio_cut(14)
                              : BalanceFunction::ratio_cheeger(14);
    auto obj = lovasz_objective(g, b);
    SolverConfig cfg;
    cfg.cR = (trial % 3 == 0) ? 0.5 : 0.0;
    cfg.cS = (trial % 3 == 1) ? 1.0 : 0.0;
    Vec f0 = random_initialization(obj, cfg.constraint, 14, 1000 + trial);
    CHECK(cfg.constraint.value(f0) == doctest::Approx(1.0).epsilon(1e-10));
    auto res = ratiodca_prox(g, obj, b, cfg, f0);
    for (size_t k = 1; k < res.trace.size(); ++k)
      CHECK(res.trace[k].lambda < res.trace[k - 1].lambda);
    CHECK(obj.s(res.f_star) > 0.0);
    CHECK(cfg.constraint.value(res.f_star) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(res.best_set_ratio <= res.lambda_star + 1e-9);
  }
}

TEST_CASE("larger proximal weight pulls the next iterate toward f^k") {
  // one step from a shared f^k: ⟨f^{k+1}, g(f^k)⟩ is nondecreasing in c.
  for (int trial = 0; trial < 8; ++trial) {
    Graph g = random_connected_graph(12, 12, 600 + trial);
    auto b = BalanceFunction::ratio_cut(12);
    auto obj = lovasz_objective(g, b);
    auto gc = ConstraintFunction::l2_squared();
    Vec fk = random_initialization(obj, gc, 12, 2000 + trial);
    double lam = obj.ratio_value(fk);
    auto sub = pick_subgradients(obj, gc, fk);
    double prev_corr = -1e300;
    for (double c : {0.0, 0.5, 1.0, 2.0}) {
      Vec v(12);
      for (int i = 0; i < 12; ++i) v[i] = lam * sub.s1[i] + c * sub.g[i];
      InnerProblem p{&g, v, -2.0 * c};
      auto sol = solve_inner(p, 1e-12, 2000000);
      double corr = dot(sol.u, sub.g);
      CHECK(corr >= prev_corr - 1e-8);
      prev_corr = std::max(prev_corr, corr);
    }
  }
}

TEST_CASE("iterates converge: step norms trend to zero on termination") {
  Graph g = random_connected_graph(16, 18, 64);
  auto b = BalanceFunction::ratio_cheeger(16);
  auto obj = lovasz_objective(g, b);
  SolverConfig cfg;
  cfg.cR = 1.0;
  Vec f0 = random_initialization(obj, cfg.constraint, 16, 65);
  auto res = ratiodca_prox(g, obj, b, cfg, f0);
  REQUIRE(res.trace.size() >= 2);
  // last recorded step is small relative to the first nontrivial one
  double first = 0.0, last = 0.0;
  for (size_t k = 1; k < res.trace.size(); ++k) {
    if (first == 0.0) first = res.trace[k].step_norm;
    last = res.trace[k].step_norm;
  }
  if (res.terminated && res.trace.size() > 3) CHECK(last <= first + 1e-12);
}

TEST_CASE("prox-form update matches the constrained solver over a few steps") {
  Graph g = random_connected_graph(9, 8, 66);
  auto b = BalanceFunction::ratio_cut(9);
  auto obj = lovasz_objective(g, b);
  auto gc = ConstraintFunction::l2_squared();
  Vec f = random_initialization(obj, gc, 9, 67);
  double c = 0.7;
  for (int step = 0; step < 5; ++step) {
    double lam = obj.ratio_value(f);
    auto sub = pick_subgradients(obj, gc, f);
    Vec prox = solve_inner_prox_form(g, f, sub.s1, lam, c, 1e-13, 2000000);

    double ck = lam / (2.0 * c);
    Vec vcon(9);
    for (int i = 0; i < 9; ++i) vcon[i] = lam * sub.s1[i] + ck * sub.g[i];
    InnerProblem p{&g, vcon, -2.0 * ck};
    auto con = solve_inner(p, 1e-13, 2000000);
    for (int i = 0; i < 9; ++i) CHECK(std::abs(prox[i] - con.u[i]) <= 1e-6);
    if (!con.descent_achieved) break;
    f = con.u;
  }
}

TEST_CASE("cut-monotone mode: thresholded ratios nonincreasing, finite") {
  std::mt19937_64 rng(68);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = random_connected_graph(20, 25, 700 + trial);
    auto b = (trial % 2 == 0) ? BalanceFunction::ratio_cut(20)
                              : BalanceFunction::ratio_cheeger(20);
    auto obj = lovasz_objective(g, b);
    SolverConfig cfg;
    cfg.mode = SolverMode::CutMonotone;
    Vec f0 = random_initialization(obj, cfg.constraint, 20, 3000 + trial);
    auto res = ratiodca_prox(g, obj, b, cfg, f0);
    CHECK(res.terminated);
    CHECK(static_cast<int>(res.trace.size()) <= cfg.max_outer);
    double prev = 1e300;
    for (auto& rec : res.trace) {
      CHECK(rec.lambda <= prev + 1e-12);
      prev = rec.lambda;
    }
  }
}

TEST_CASE("termination certificates are cross-consistent in c") {
  // a point certified with cR = cS = 0 must also be certified with cS = 1
  // (the added proximal term vanishes at the fixed point).
  Graph g = random_connected_graph(10, 10, 69);
  auto b = BalanceFunction::ratio_cut(10);
  auto obj = lovasz_objective(g, b);
  SolverConfig plain;
  Vec f0 = random_initialization(obj, plain.constraint, 10, 70);
  auto res = ratiodca_prox(g, obj, b, plain, f0);
  REQUIRE(res.terminated);
  SolverConfig prox_cfg;
  prox_cfg.cS = 1.0;
  auto res2 = ratiodca_prox(g, obj, b, prox_cfg, res.f_star);
  CHECK(res2.terminated);
  CHECK(res2.lambda_star <= res.lambda_star + 1e-9);
}

TEST_CASE("partition improvement on the path graph") {
  Graph g = path_graph(4);
  auto b = BalanceFunction::ratio_cut(4);
  auto obj = lovasz_objective(g, b);
  SolverConfig cfg;
  cfg.cS = 1.0;
  // A = {1}: cut 2, balance 3, ratio 2/3; optimum is {0,1} with 1/4
  auto imp = improve_partition(g, obj, b, cfg, make_set(4, {1}));
  CHECK(imp.improved);
  CHECK(imp.ratio == doctest::Approx(0.25));
  // starting from the optimum: certified no-improvement
  auto imp2 = improve_partition(g, obj, b, cfg, make_set(4, {0, 1}));
  CHECK_FALSE(imp2.improved);
  CHECK(imp2.certified);
  CHECK(imp2.ratio == doctest::Approx(0.25));
  CHECK(imp2.set == make_set(4, {0, 1}));
}

TEST_CASE("improvement never returns a worse partition") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_connected_graph(12, 14, 800 + trial);
    auto b = BalanceFunction::ratio_cheeger(12);
    auto obj = lovasz_objective(g, b);
    SolverConfig cfg;
    cfg.cS = 1.0;
    VertexSet a(12);
    while (a.count() == 0 || a.count() == 12) {
      a = VertexSet(12);
      for (int i = 0; i < 12; ++i)
        if (rng() & 1) a.insert(i);
    }
    double before = cut_value(g, a) / b.value(a);
    auto imp = improve_partition(g, obj, b, cfg, a);
    CHECK(imp.ratio <= before + 1e-10);
    if (imp.improved) CHECK(imp.ratio < before - 1e-12);
  }
}

TEST_CASE("multi-init runs are deterministic and thread-invariant") {
  Graph g = random_connected_graph(15, 18, 72);
  auto b = BalanceFunction::ratio_cut(15);
  auto obj = lovasz_objective(g, b);
  SolverConfig cfg;
  cfg.seed = 9;
  setenv("BCK_THREADS", "1", 1);
  auto r1 = multi_init_run(g, obj, b, cfg, 8, true);
  setenv("BCK_THREADS", "4", 1);
  auto r2 = multi_init_run(g, obj, b, cfg, 8, true);
  unsetenv("BCK_THREADS");
  REQUIRE(r1.runs.size() == r2.runs.size());
  CHECK(r1.avg == r2.avg);
  CHECK(r1.top10_avg == r2.top10_avg);
  CHECK(r1.best == r2.best);
  for (size_t i = 0; i < r1.runs.size(); ++i) {
    CHECK(r1.runs[i].best_ratio == r2.runs[i].best_ratio);
    CHECK(r1.runs[i].lambda_trace == r2.runs[i].lambda_trace);
  }
  CHECK(r1.best <= r1.top10_avg + 1e-12);
  CHECK(r1.top10_avg <= r1.avg + 1e-12);
  CHECK(r1.runs.back().spectral_init);
}

TEST_CASE("multi-init best matches the brute-force oracle on small graphs") {
  for (int trial = 0; trial < 5; ++trial) {
    Graph g = random_connected_graph(9, 9, 900 + trial);
    auto b = BalanceFunction::ratio_cut(9);
    auto obj = lovasz_objective(g, b);
    SolverConfig cfg;
    cfg.cS = 1.0;
    cfg.seed = 10 + trial;
    auto rep = multi_init_run(g, obj, b, cfg, 20, true);
    auto oracle = brute_force_optimum(g, b);
    CHECK(rep.best >= oracle.best_ratio - 1e-10);
    CHECK(rep.best <= oracle.best_ratio + 1e-6);
  }
}

TEST_CASE("eigen residual vanishes at certified fixed points") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 5; ++trial) {
    Graph g = random_connected_graph(10, 10, 1100 + trial);
    auto b = BalanceFunction::ratio_cut(10);
    auto obj = lovasz_objective(g, b);
    SolverConfig cfg;
    Vec f0 = random_initialization(obj, cfg.constraint, 10, 4000 + trial);
    auto res = ratiodca_prox(g, obj, b, cfg, f0);
    if (!res.terminated) continue;
    double resid =
        eigen_residual(g, obj, cfg, res.f_star, res.lambda_star, 1e-10);
    CHECK(resid >= 0.0);
    CHECK(resid <= 1e-6);
  }
}
