#pragma once

#include "bck/graph.hpp"

namespace bck {

/// Inner convex problem min_{‖u‖₂ ≤ 1} Φ(u), Φ(u) = TV_w(u) − ⟨u, v⟩.
/// The difference operator B has one signed unit row per undirected edge;
/// the edge weights act as dual box radii, so ‖B‖² ≤ 2·max unweighted degree.
struct InnerProblem {
  const Graph* graph = nullptr;
  Vec v;                        // linear term
  double descent_target = 0.0;  // Φ(f^k) = −c^k·p
};

struct InnerSolution {
  Vec u;  // ‖u‖₂ = 1 unless u = 0
  double phi = 0.0;
  double gap = 0.0;
  int iterations = 0;
  bool descent_achieved = false;
  // dual lower bound proved min Φ ≥ descent_target − descent_slack
  bool certified = false;
};

/// Warm-start state carried across outer iterations.
struct PdhgState {
  Vec u;
  Vec alpha;  // one multiplier per undirected edge
};

/// Φ(u) = TV(g, u) − ⟨u, v⟩.
double inner_phi(const Graph& g, const Vec& v, const Vec& u);

/// Upper bound Φ(u) − min Φ ≥ 0 from the dual point alpha (|α_e| ≤ w_e):
/// gap = Φ(u) + ‖Bᵀα − v‖₂. Zero at a saddle point.
double pd_gap(const InnerProblem& p, const Vec& u, const Vec& alpha);

/// PDHG on the saddle form. Stops when the gap estimate falls below
/// tol·(1+|Φ|) once descent below the target is achieved, when the dual bound
/// certifies that no descent beyond descent_slack exists, or at max_iter.
/// The returned u is rescaled to the unit sphere when nonzero.
InnerSolution solve_inner(const InnerProblem& p, double tol, int max_iter,
                          double descent_slack = 0.0,
                          PdhgState* warm = nullptr);

/// Prox-form step: h = argmin { TV(u) + (λ/2c)‖u − (f + c·v)‖² }, returns
/// h/‖h‖₂. Strongly convex; solved with the accelerated PDHG variant.
Vec solve_inner_prox_form(const Graph& g, const Vec& f, const Vec& v,
                          double lam, double c, double tol, int max_iter);

}  // namespace bck
