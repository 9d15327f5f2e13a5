#include "bck/oracle.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "bck/outer.hpp"

namespace bck {

OracleResult brute_force_optimum(const Graph& g, const BalanceFunction& b) {
  const int n = g.num_vertices();
  if (n < 2) throw std::invalid_argument("brute force: need n >= 2");
  if (n > 24) throw std::invalid_argument("brute force: n > 24 refused");

  const auto edges = g.edges();
  OracleResult res;
  res.best_ratio = std::numeric_limits<double>::infinity();
  std::uint64_t best_mask = 0;
  // vertex n−1 fixed in the complement; complement symmetry halves the work
  const std::uint64_t limit = 1ULL << (n - 1);
  bool any = false;
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    ++res.evaluated;
    int card = std::popcount(mask);
    double cut = 0.0;
    for (const auto& e : edges) {
      bool iu = (mask >> e.u) & 1ULL, iv = (mask >> e.v) & 1ULL;
      if (iu != iv) cut += e.w;
    }
    double bal;
    if (b.size_only()) {
      bal = b.value_from_size(card);
    } else {
      VertexSet a(n);
      for (int i = 0; i < n; ++i)
        if ((mask >> i) & 1ULL) a.insert(i);
      bal = b.value(a);
    }
    if (bal <= 0.0) continue;
    any = true;
    double ratio = cut / bal;
    if (ratio < res.best_ratio) {
      res.best_ratio = ratio;
      best_mask = mask;
    }
  }
  if (!any) throw std::runtime_error("brute force: Ŝ(A) = 0 for all subsets");
  res.best_set = VertexSet(n);
  for (int i = 0; i < n; ++i)
    if ((best_mask >> i) & 1ULL) res.best_set.insert(i);
  return res;
}

double directional_derivative_check(const Functional& fn, const Vec& f,
                                    int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const double steps[] = {1e-3, 1e-2, 1e-1};
  double base = fn.value(f);
  Vec s = fn.subgrad(f);
  double worst = -std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < trials; ++trial) {
    Vec d(f.size());
    for (double& x : d) x = uni(rng);
    double sd = dot(s, d);
    for (double t : steps) {
      Vec fp(f.size());
      for (size_t i = 0; i < f.size(); ++i) fp[i] = f[i] + t * d[i];
      worst = std::max(worst, t * sd - (fn.value(fp) - base));
    }
  }
  return worst;
}

RelaxationReport verify_exact_relaxation(const Graph& g,
                                         const RatioObjective& obj,
                                         const BalanceFunction& b, int samples,
                                         std::uint64_t seed) {
  const int n = g.num_vertices();
  if (n > 24) throw std::invalid_argument("verify_exact_relaxation: n > 24");

  OracleResult oracle = brute_force_optimum(g, b);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  RelaxationReport rep;
  rep.oracle_ratio = oracle.best_ratio;
  int hits = 0;
  for (int s = 0; s < samples; ++s) {
    Vec f(static_cast<size_t>(n));
    for (double& x : f) x = uni(rng);
    double fv;
    try {
      fv = obj.ratio_value(f);
    } catch (const DegeneratePointError&) {
      --s;  // resample; measure-zero event
      continue;
    }
    auto [set, ratio] = optimal_threshold(g, b, f);
    if (ratio > fv + 1e-10)
      throw std::runtime_error("relaxation check: thresholding inequality "
                               "violated");
    if (ratio < oracle.best_ratio - 1e-10)
      throw std::runtime_error("relaxation check: threshold beats the oracle");
    if (fv < oracle.best_ratio - 1e-10)
      throw std::runtime_error("relaxation check: F(f) below the set optimum");
    if (std::abs(ratio - oracle.best_ratio) <= 1e-10) ++hits;
    ++rep.samples;
  }
  rep.equality_fraction =
      rep.samples ? static_cast<double>(hits) / rep.samples : 0.0;
  return rep;
}

}  // namespace bck
