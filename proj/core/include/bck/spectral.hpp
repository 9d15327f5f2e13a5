#pragma once

#include "bck/graph.hpp"

namespace bck {

/// Action of the graph Laplacian L = D − W.
Vec laplacian_apply(const Graph& g, const Vec& f);

/// Unit-norm second eigenvector of L (⟨v, 1⟩ = 0), computed by shifted power
/// iteration with deflation of the constant vector. Sign convention: first
/// nonzero component positive. Throws on disconnected graphs.
Vec second_eigenvector(const Graph& g, double tol = 1e-8, int max_iter = 20000);

}  // namespace bck
