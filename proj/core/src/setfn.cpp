#include "bck/setfn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bck {

BalanceFunction BalanceFunction::ratio_cut(int n) {
  return BalanceFunction(Kind::RatioCut, n, nullptr, true);
}

BalanceFunction BalanceFunction::ratio_cheeger(int n) {
  return BalanceFunction(Kind::RatioCheeger, n, nullptr, false);
}

BalanceFunction BalanceFunction::custom(int n, Oracle oracle, bool submodular) {
  if (!oracle) throw std::invalid_argument("custom balance: null oracle");
  return BalanceFunction(Kind::Custom, n, std::move(oracle), submodular);
}

double BalanceFunction::value_from_size(int card) const {
  double a = card, b = n_ - card;
  switch (kind_) {
    case Kind::RatioCut:
      return a * b;
    case Kind::RatioCheeger:
      return std::min(a, b);
    case Kind::Custom:
      throw std::logic_error("value_from_size on custom balance function");
  }
  return 0.0;
}

double BalanceFunction::value(const VertexSet& a) const {
  if (a.size() != n_)
    throw std::invalid_argument("balance function: dimension mismatch");
  if (kind_ != Kind::Custom) return value_from_size(a.count());
  double v = oracle_(a);
  if (v < 0.0)
    throw std::runtime_error("custom balance function returned negative value");
  return v;
}

namespace {

std::vector<int> ascending_order(const Vec& f) {
  std::vector<int> order(f.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return f[a] < f[b]; });
  return order;
}

// Ŝ along the threshold chain: chain[i] = Ŝ(C_i) where C_i holds the n−i
// largest entries of f (stable ascending order), chain[0] = chain[n] = 0.
std::vector<double> chain_values(const BalanceFunction& b,
                                 const std::vector<int>& order) {
  int n = static_cast<int>(order.size());
  std::vector<double> chain(static_cast<size_t>(n) + 1, 0.0);
  if (b.size_only()) {
    for (int i = 1; i < n; ++i) chain[i] = b.value_from_size(n - i);
  } else {
    VertexSet c(n);
    for (int i = 0; i < n; ++i) c.insert(i);
    for (int i = 1; i < n; ++i) {
      c.erase(order[i - 1]);
      chain[i] = b.value(c);
    }
  }
  return chain;
}

}  // namespace

double lovasz_value(const BalanceFunction& b, const Vec& f) {
  if (static_cast<int>(f.size()) != b.num_vertices())
    throw std::invalid_argument("lovasz_value: dimension mismatch");
  auto order = ascending_order(f);
  auto chain = chain_values(b, order);
  int n = static_cast<int>(f.size());
  double s = 0.0;
  for (int i = 1; i < n; ++i) s += chain[i] * (f[order[i]] - f[order[i - 1]]);
  return s;
}

Vec lovasz_subgradient(const BalanceFunction& b, const Vec& f) {
  if (static_cast<int>(f.size()) != b.num_vertices())
    throw std::invalid_argument("lovasz_subgradient: dimension mismatch");
  auto order = ascending_order(f);
  auto chain = chain_values(b, order);
  int n = static_cast<int>(f.size());
  Vec s(f.size(), 0.0);
  for (int i = 1; i <= n; ++i) s[order[i - 1]] = chain[i - 1] - chain[i];
  return s;
}

Extension::Extension(BalanceFunction base, ExtensionKind kind)
    : base_(std::move(base)), kind_(kind) {
  if (kind_ == ExtensionKind::ScaledMean &&
      base_.kind() != BalanceFunction::Kind::RatioCut)
    throw std::invalid_argument("ScaledMean extension requires RatioCut base");
  if (kind_ == ExtensionKind::Median &&
      base_.kind() != BalanceFunction::Kind::RatioCheeger)
    throw std::invalid_argument("Median extension requires RatioCheeger base");
}

namespace {

double mean_of(const Vec& f) {
  double s = 0.0;
  for (double x : f) s += x;
  return s / static_cast<double>(f.size());
}

// lower middle order statistic
double lower_median(Vec f) {
  size_t k = (f.size() - 1) / 2;
  std::nth_element(f.begin(), f.begin() + static_cast<long>(k), f.end());
  return f[k];
}

}  // namespace

double Extension::value(const Vec& f) const {
  if (static_cast<int>(f.size()) != base_.num_vertices())
    throw std::invalid_argument("extension value: dimension mismatch");
  switch (kind_) {
    case ExtensionKind::Lovasz:
      return lovasz_value(base_, f);
    case ExtensionKind::ScaledMean: {
      double mu = mean_of(f), s = 0.0;
      for (double x : f) s += std::abs(x - mu);
      return 0.5 * static_cast<double>(f.size()) * s;
    }
    case ExtensionKind::Median: {
      double med = lower_median(f), s = 0.0;
      for (double x : f) s += std::abs(x - med);
      return s;
    }
  }
  return 0.0;
}

Vec Extension::subgradient(const Vec& f) const {
  if (static_cast<int>(f.size()) != base_.num_vertices())
    throw std::invalid_argument("extension subgradient: dimension mismatch");
  size_t n = f.size();
  switch (kind_) {
    case ExtensionKind::Lovasz:
      return lovasz_subgradient(base_, f);
    case ExtensionKind::ScaledMean: {
      // (n/2)·(I − 11ᵀ/n)·sign(f − mean f)
      double mu = mean_of(f);
      Vec u(n);
      for (size_t i = 0; i < n; ++i)
        u[i] = f[i] > mu ? 1.0 : (f[i] < mu ? -1.0 : 0.0);
      double umean = mean_of(u);
      Vec s(n);
      for (size_t i = 0; i < n; ++i)
        s[i] = 0.5 * static_cast<double>(n) * (u[i] - umean);
      return s;
    }
    case ExtensionKind::Median: {
      // sign around the median; ties balance the strict signs so Σs = 0
      double med = lower_median(f);
      int above = 0, below = 0, ties = 0;
      for (double x : f) {
        if (x > med)
          ++above;
        else if (x < med)
          ++below;
        else
          ++ties;
      }
      double tie_val = static_cast<double>(below - above) / ties;
      Vec s(n);
      for (size_t i = 0; i < n; ++i)
        s[i] = f[i] > med ? 1.0 : (f[i] < med ? -1.0 : tie_val);
      return s;
    }
  }
  return Vec(n, 0.0);
}

}  // namespace bck
