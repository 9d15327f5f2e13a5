#include "bck/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "bck/objective.hpp"

namespace bck {

Vec laplacian_apply(const Graph& g, const Vec& f) {
  const int n = g.num_vertices();
  Vec out(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) out[i] = g.weighted_degree(i) * f[i];
  for (const auto& e : g.edges()) {
    out[e.u] -= e.w * f[e.v];
    out[e.v] -= e.w * f[e.u];
  }
  return out;
}

namespace {

void deflate_constant(Vec& f) {
  double mu = 0.0;
  for (double x : f) mu += x;
  mu /= static_cast<double>(f.size());
  for (double& x : f) x -= mu;
}

}  // namespace

Vec second_eigenvector(const Graph& g, double tol, int max_iter) {
  if (tol <= 0.0) throw std::invalid_argument("second_eigenvector: tol <= 0");
  const int n = g.num_vertices();
  if (n < 2)
    throw std::invalid_argument("second_eigenvector: need at least 2 vertices");
  if (int comps = g.num_components(); comps != 1)
    throw std::runtime_error("second_eigenvector: graph disconnected (" +
                             std::to_string(comps) + " components)");

  // shift keeping cI − L positive definite on the complement of 1
  const double c = 1.0 + 2.0 * g.max_weighted_degree();

  Vec v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    v[i] = std::cos(static_cast<double>(i) + 1.0);  // fixed aperiodic start
  deflate_constant(v);
  double nrm = norm2(v);
  for (double& x : v) x /= nrm;

  double rayleigh = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Vec lv = laplacian_apply(g, v);
    Vec w(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) w[i] = c * v[i] - lv[i];
    deflate_constant(w);
    nrm = norm2(w);
    if (nrm == 0.0)
      throw std::runtime_error("second_eigenvector: iteration collapsed");
    for (double& x : w) x /= nrm;
    v = std::move(w);

    if (it % 10 == 9) {
      lv = laplacian_apply(g, v);
      rayleigh = dot(v, lv);
      double resid = 0.0;
      for (int i = 0; i < n; ++i) {
        double r = lv[i] - rayleigh * v[i];
        resid += r * r;
      }
      if (std::sqrt(resid) <= tol) break;
    }
  }

  for (double x : v) {
    if (x > 0.0) break;
    if (x < 0.0) {
      for (double& y : v) y = -y;
      break;
    }
  }
  return v;
}

}  // namespace bck
