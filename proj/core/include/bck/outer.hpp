#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bck/inner.hpp"
#include "bck/objective.hpp"
#include "bck/setfn.hpp"

namespace bck {

enum class SolverMode { Standard, CutMonotone };

struct SolverConfig {
  // proximal schedule c^k = cR + λ^k·cS
  double cR = 0.0;
  double cS = 0.0;
  ConstraintFunction constraint = ConstraintFunction::l2_squared();
  SolverMode mode = SolverMode::Standard;
  // inner accuracy schedule tol_k = max(tol_min, tol0·rho^k)
  double inner_tol0 = 1e-2;
  double inner_rho = 0.5;
  double inner_tol_min = 1e-8;
  int inner_max_iter = 20000;
  int max_outer = 100;
  double eps_term = 1e-8;  // scaled by (1 + λ^k) at the termination test
  std::uint64_t seed = 0;
};

struct IterationRecord {
  double lambda = 0.0;
  double phi = 0.0;        // achieved inner objective
  double step_norm = 0.0;  // ‖f^{k+1} − f^k‖₂
  int inner_iterations = 0;
};

struct SolveResult {
  Vec f_star;
  double lambda_star = 0.0;
  VertexSet best_set;
  double best_set_ratio = 0.0;
  std::vector<IterationRecord> trace;
  bool terminated = false;  // certified, as opposed to max_outer hit
};

struct RunReport {
  struct Run {
    double best_ratio = 0.0;
    int best_set_size = 0;
    int outer_iterations = 0;
    bool terminated = false;
    bool spectral_init = false;
    std::vector<double> lambda_trace;
  };
  std::vector<Run> runs;
  double avg = 0.0;
  double top10_avg = 0.0;
  double best = 0.0;
  VertexSet best_set;

  std::string to_json() const;
};

/// Best threshold set C_t = {i : f_i > t} under cut/Ŝ, excluding ∅ and V;
/// ties broken by smallest cardinality. O((n+m) log n).
std::pair<VertexSet, double> optimal_threshold(const Graph& g,
                                               const BalanceFunction& b,
                                               const Vec& f);

/// One RatioDCA-prox run from initialization f0 (normalized to G(f0) = 1).
SolveResult ratiodca_prox(const Graph& g, const RatioObjective& obj,
                          const BalanceFunction& b, const SolverConfig& cfg,
                          const Vec& f0);

/// Runs one pass from f0 = 1_A; returns a strictly better partition or A
/// itself with a termination certificate (second element of the pair false).
struct ImprovementResult {
  VertexSet set;
  double ratio = 0.0;
  bool improved = false;
  bool certified = false;  // no improvement, with a termination certificate
};
ImprovementResult improve_partition(const Graph& g, const RatioObjective& obj,
                                    const BalanceFunction& b,
                                    const SolverConfig& cfg,
                                    const VertexSet& a);

/// Seeded random initialization: i.i.d. uniform[−1,1], mean-centered,
/// resampled while S(f) = 0, normalized to G(f) = 1.
Vec random_initialization(const RatioObjective& obj,
                          const ConstraintFunction& gfun, int n,
                          std::uint64_t seed);

/// n_random seeded runs (streams derived from (cfg.seed, index)) plus an
/// optional spectral run. Deterministic for fixed seed and any thread count;
/// parallelism is capped by the BCK_THREADS environment variable.
RunReport multi_init_run(const Graph& g, const RatioObjective& obj,
                         const BalanceFunction& b, const SolverConfig& cfg,
                         int n_random, bool use_spectral);

/// Same, but with caller-provided initial vectors (shared across sweeps).
RunReport multi_init_run_with(const Graph& g, const RatioObjective& obj,
                              const BalanceFunction& b,
                              const SolverConfig& cfg,
                              const std::vector<Vec>& inits,
                              std::optional<int> spectral_index = {});

/// −min_{‖u‖≤1} Φ⁰_{f*}(u), clipped at 0; zero (within the inner tolerance)
/// iff the nonlinear eigenvector condition holds at f* for the selected
/// subgradients.
double eigen_residual(const Graph& g, const RatioObjective& obj,
                      const SolverConfig& cfg, const Vec& f_star,
                      double lambda_star, double tol = 1e-10,
                      int max_iter = 200000);

}  // namespace bck
