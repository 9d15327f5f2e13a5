#pragma once

#include <cstdint>

#include "bck/objective.hpp"
#include "bck/setfn.hpp"

namespace bck {

struct OracleResult {
  VertexSet best_set;
  double best_ratio = 0.0;
  std::uint64_t evaluated = 0;  // 2^{n−1} − 1
};

/// Exact minimum of cut(A,Ā)/Ŝ(A) over nonempty proper subsets, enumerating
/// 2^{n−1} − 1 subsets (complement symmetry). Hard guard n ≤ 24. Ties broken
/// by smallest binary encoding.
OracleResult brute_force_optimum(const Graph& g, const BalanceFunction& b);

/// Max over random directions d and t ∈ {1e−3, 1e−2, 1e−1} of
/// t·⟨s(f), d⟩ − (A(f+td) − A(f)); nonpositive (up to rounding) for a valid
/// subgradient of a convex A.
double directional_derivative_check(const Functional& fn, const Vec& f,
                                    int trials, std::uint64_t seed);

struct RelaxationReport {
  std::uint64_t samples = 0;
  double oracle_ratio = 0.0;
  double equality_fraction = 0.0;  // thresholded samples hitting the optimum
};

/// For random f: thresholded ratio ≤ F(f) + 1e−10 and ≥ oracle − 1e−10; any
/// violation throws.
RelaxationReport verify_exact_relaxation(const Graph& g,
                                         const RatioObjective& obj,
                                         const BalanceFunction& b, int samples,
                                         std::uint64_t seed);

}  // namespace bck
