#include "bck/outer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "bck/spectral.hpp"

namespace bck {

std::pair<VertexSet, double> optimal_threshold(const Graph& g,
                                               const BalanceFunction& b,
                                               const Vec& f) {
  const int n = g.num_vertices();
  if (static_cast<int>(f.size()) != n)
    throw std::invalid_argument("optimal_threshold: dimension mismatch");

  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int c) { return f[a] > f[c]; });
  if (f[order.front()] == f[order.back()])
    throw std::invalid_argument("optimal_threshold: constant vector");

  VertexSet current(n);
  double cut = 0.0;
  double best_ratio = std::numeric_limits<double>::infinity();
  int best_prefix = -1, best_card = n + 1;

  int pos = 0;
  while (pos < n) {
    // absorb the whole tie group; C_t cannot split equal values
    double v = f[order[pos]];
    while (pos < n && f[order[pos]] == v) {
      int i = order[pos];
      double boundary = 0.0;
      auto nbrs = g.neighbors(i);
      auto ws = g.neighbor_weights(i);
      for (size_t t = 0; t < nbrs.size(); ++t)
        if (current.contains(nbrs[t])) boundary += ws[t];
      cut += g.weighted_degree(i) - 2.0 * boundary;
      current.insert(i);
      ++pos;
    }
    if (pos >= n) break;  // C = V excluded
    int card = pos;
    double bal = b.size_only() ? b.value_from_size(card) : b.value(current);
    if (bal <= 0.0) continue;
    double ratio = cut / bal;
    if (ratio < best_ratio || (ratio == best_ratio && card < best_card)) {
      best_ratio = ratio;
      best_prefix = pos;
      best_card = card;
    }
  }
  if (best_prefix < 0)
    throw std::runtime_error("optimal_threshold: no valid threshold set");

  VertexSet best(n);
  for (int i = 0; i < best_prefix; ++i) best.insert(order[i]);
  return {std::move(best), best_ratio};
}

namespace {

double step_norm(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

void track_best(const Graph& g, const BalanceFunction& b, const Vec& f,
                VertexSet& best_set, double& best_ratio) {
  auto [set, ratio] = optimal_threshold(g, b, f);
  if (ratio < best_ratio ||
      (ratio == best_ratio && set.count() < best_set.count())) {
    best_set = std::move(set);
    best_ratio = ratio;
  }
}

}  // namespace

SolveResult ratiodca_prox(const Graph& g, const RatioObjective& obj,
                          const BalanceFunction& b, const SolverConfig& cfg,
                          const Vec& f0) {
  const ConstraintFunction& gfun = cfg.constraint;
  const double p = gfun.degree();

  Vec f = gfun.normalize(f0);
  double lam = obj.ratio_value(f);

  SolveResult res;
  res.best_set_ratio = std::numeric_limits<double>::infinity();
  track_best(g, b, f, res.best_set, res.best_set_ratio);
  res.trace.push_back({lam, 0.0, 0.0, 0});

  PdhgState warm;
  InnerProblem prob;
  prob.graph = &g;

  for (int k = 0; k < cfg.max_outer; ++k) {
    // in cut-monotone mode the iterate's optimal threshold set drives λ^k
    double lam_eff = lam;
    std::pair<VertexSet, double> thresh{VertexSet(), 0.0};
    if (cfg.mode == SolverMode::CutMonotone) {
      thresh = optimal_threshold(g, b, f);
      lam_eff = thresh.second;
    }
    double ck = cfg.cR + lam_eff * cfg.cS;
    double eps = cfg.eps_term * (1.0 + lam_eff);
    double tol_k = std::max(cfg.inner_tol_min,
                            cfg.inner_tol0 * std::pow(cfg.inner_rho, k));

    SubgradientSet sub = pick_subgradients(obj, gfun, f);
    prob.v = linear_term(obj, f, lam_eff, ck, sub);
    prob.descent_target = -ck * p;

    InnerSolution sol = solve_inner(prob, tol_k, cfg.inner_max_iter, eps, &warm);
    if (!sol.descent_achieved || sol.phi >= prob.descent_target - eps) {
      // before declaring termination, re-solve tightly: either real descent
      // turns up after all, or the dual bound certifies min Φ ≥ −c·p − ε
      InnerSolution chk = solve_inner(prob, std::min(tol_k, 0.01 * cfg.eps_term),
                                      cfg.inner_max_iter, eps, &warm);
      if (chk.descent_achieved && chk.phi < prob.descent_target - eps) {
        sol = std::move(chk);
      } else {
        res.terminated = chk.certified || sol.certified;
        break;
      }
    }

    Vec u = std::move(sol.u);
    if (cfg.mode == SolverMode::CutMonotone) {
      Vec one_star = gfun.normalize(thresh.first.indicator());
      if (inner_phi(g, prob.v, one_star) <= sol.phi + eps) u = one_star;
    }

    Vec f_next = gfun.normalize(u);
    double lam_next = obj.ratio_value(f_next);
    if (lam_next >= lam) {
      // F stalled despite Φ descent (inexact arithmetic); certify if possible
      InnerSolution chk = solve_inner(prob, std::min(tol_k, 0.01 * cfg.eps_term),
                                      cfg.inner_max_iter, eps, &warm);
      res.terminated = chk.certified;
      break;
    }

    res.trace.push_back(
        {lam_next, sol.phi, step_norm(f_next, f), sol.iterations});
    track_best(g, b, f_next, res.best_set, res.best_set_ratio);
    f = std::move(f_next);
    lam = lam_next;
  }

  res.f_star = std::move(f);
  res.lambda_star = lam;
  return res;
}

ImprovementResult improve_partition(const Graph& g, const RatioObjective& obj,
                                    const BalanceFunction& b,
                                    const SolverConfig& cfg,
                                    const VertexSet& a) {
  int card = a.count();
  if (card == 0 || card == a.size())
    throw std::invalid_argument("improve_partition: degenerate partition");
  double bal = b.value(a);
  if (bal == 0.0)
    throw std::invalid_argument("improve_partition: balance value is zero");
  double ratio_a = cut_value(g, a) / bal;

  SolveResult res = ratiodca_prox(g, obj, b, cfg, a.indicator());
  if (res.best_set_ratio < ratio_a)
    return {res.best_set, res.best_set_ratio, true, false};
  return {a, ratio_a, false, res.terminated};
}

namespace {

// splitmix64, used to derive independent per-run streams
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int thread_cap() {
  if (const char* env = std::getenv("BCK_THREADS")) {
    int t = std::atoi(env);
    if (t >= 1) return t;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

Vec random_initialization(const RatioObjective& obj,
                          const ConstraintFunction& gfun, int n,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vec f(static_cast<size_t>(n));
    for (double& x : f) x = uni(rng);
    double mu = 0.0;
    for (double x : f) mu += x;
    mu /= n;
    for (double& x : f) x -= mu;
    if (obj.s(f) != 0.0 && norm2(f) > 0.0) return gfun.normalize(f);
  }
  throw std::runtime_error("random_initialization: S(f) = 0 on every sample");
}

RunReport multi_init_run_with(const Graph& g, const RatioObjective& obj,
                              const BalanceFunction& b,
                              const SolverConfig& cfg,
                              const std::vector<Vec>& inits,
                              std::optional<int> spectral_index) {
  if (inits.empty())
    throw std::invalid_argument("multi_init_run: no initializations");
  const int total = static_cast<int>(inits.size());

  struct Slot {
    RunReport::Run run;
    VertexSet set;
  };
  std::vector<Slot> slots(static_cast<size_t>(total));

  auto work = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      SolveResult res = ratiodca_prox(g, obj, b, cfg, inits[i]);
      Slot& s = slots[i];
      s.run.best_ratio = res.best_set_ratio;
      s.run.best_set_size = res.best_set.count();
      s.run.outer_iterations = static_cast<int>(res.trace.size()) - 1;
      s.run.terminated = res.terminated;
      s.run.spectral_init = spectral_index && *spectral_index == i;
      for (const auto& rec : res.trace) s.run.lambda_trace.push_back(rec.lambda);
      s.set = std::move(res.best_set);
    }
  };

  int threads = std::min(thread_cap(), total);
  if (threads <= 1) {
    work(0, total);
  } else {
    std::vector<std::thread> pool;
    int chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      int lo = t * chunk, hi = std::min(total, lo + chunk);
      if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  RunReport report;
  report.best = std::numeric_limits<double>::infinity();
  std::vector<double> ratios;
  ratios.reserve(static_cast<size_t>(total));
  for (auto& s : slots) {
    report.runs.push_back(s.run);
    ratios.push_back(s.run.best_ratio);
    if (s.run.best_ratio < report.best) {
      report.best = s.run.best_ratio;
      report.best_set = std::move(s.set);
    }
  }
  double sum = 0.0;
  for (double r : ratios) sum += r;
  report.avg = sum / total;
  std::sort(ratios.begin(), ratios.end());
  int topk = std::min<int>(10, total);
  double tsum = 0.0;
  for (int i = 0; i < topk; ++i) tsum += ratios[static_cast<size_t>(i)];
  report.top10_avg = tsum / topk;
  return report;
}

RunReport multi_init_run(const Graph& g, const RatioObjective& obj,
                         const BalanceFunction& b, const SolverConfig& cfg,
                         int n_random, bool use_spectral) {
  if (n_random < 1)
    throw std::invalid_argument("multi_init_run: n_random must be >= 1");
  std::vector<Vec> inits;
  inits.reserve(static_cast<size_t>(n_random) + 1);
  std::optional<int> spectral_index;
  for (int i = 0; i < n_random; ++i)
    inits.push_back(random_initialization(obj, cfg.constraint,
                                          g.num_vertices(),
                                          mix_seed(cfg.seed, i)));
  if (use_spectral) {
    spectral_index = static_cast<int>(inits.size());
    inits.push_back(cfg.constraint.normalize(second_eigenvector(g)));
  }
  return multi_init_run_with(g, obj, b, cfg, inits, spectral_index);
}

double eigen_residual(const Graph& g, const RatioObjective& obj,
                      const SolverConfig& cfg, const Vec& f_star,
                      double lambda_star, double tol, int max_iter) {
  SubgradientSet sub = pick_subgradients(obj, cfg.constraint, f_star);
  InnerProblem prob;
  prob.graph = &g;
  prob.v = linear_term(obj, f_star, lambda_star, 0.0, sub);
  prob.descent_target = 0.0;
  InnerSolution sol = solve_inner(prob, tol, max_iter);
  return std::max(0.0, -sol.phi);
}

std::string RunReport::to_json() const {
  nlohmann::json j;
  j["avg"] = avg;
  j["top10_avg"] = top10_avg;
  j["best"] = best;
  std::vector<int> members;
  for (int i = 0; i < best_set.size(); ++i)
    if (best_set.contains(i)) members.push_back(i);
  j["best_set"] = members;
  j["runs"] = nlohmann::json::array();
  for (const auto& r : runs) {
    j["runs"].push_back({{"best_ratio", r.best_ratio},
                         {"best_set_size", r.best_set_size},
                         {"outer_iterations", r.outer_iterations},
                         {"terminated", r.terminated},
                         {"spectral_init", r.spectral_init},
                         {"lambda_trace", r.lambda_trace}});
  }
  return j.dump(2);
}

}  // namespace bck
