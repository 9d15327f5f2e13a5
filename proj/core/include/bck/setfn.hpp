#pragma once

#include <functional>

#include "bck/graph.hpp"

namespace bck {

/// Symmetric nonnegative balancing function Ŝ with Ŝ(∅) = Ŝ(V) = 0.
class BalanceFunction {
 public:
  enum class Kind { RatioCut, RatioCheeger, Custom };
  using Oracle = std::function<double(const VertexSet&)>;

  static BalanceFunction ratio_cut(int n);       // Ŝ(A) = |A||Ā|
  static BalanceFunction ratio_cheeger(int n);   // Ŝ(A) = min(|A|,|Ā|)
  static BalanceFunction custom(int n, Oracle oracle, bool submodular);

  Kind kind() const { return kind_; }
  int num_vertices() const { return n_; }
  bool submodular() const { return submodular_; }

  double value(const VertexSet& a) const;
  /// Fast path for the built-in kinds, whose Ŝ depends on |A| only.
  double value_from_size(int card) const;
  bool size_only() const { return kind_ != Kind::Custom; }

 private:
  BalanceFunction(Kind k, int n, Oracle o, bool sub)
      : kind_(k), n_(n), oracle_(std::move(o)), submodular_(sub) {}

  Kind kind_;
  int n_;
  Oracle oracle_;
  bool submodular_;
};

/// Lovász extension value: sort f ascending, Σ_i Ŝ(C_i)(f_(i+1) − f_(i))
/// with C_i the set of the n−i largest entries.
double lovasz_value(const BalanceFunction& b, const Vec& f);

/// Greedy subgradient s_{π(i)} = Ŝ(C_{i−1}) − Ŝ(C_i) for the stable
/// ascending order π; ⟨f, s⟩ = lovasz_value(b, f).
Vec lovasz_subgradient(const BalanceFunction& b, const Vec& f);

enum class ExtensionKind { Lovasz, ScaledMean, Median };

/// A one-homogeneous, even, shift-invariant extension S of Ŝ, agreeing with
/// Ŝ at indicators. ScaledMean requires base RatioCut, Median requires base
/// RatioCheeger.
class Extension {
 public:
  Extension(BalanceFunction base, ExtensionKind kind);

  const BalanceFunction& base() const { return base_; }
  ExtensionKind kind() const { return kind_; }

  double value(const Vec& f) const;
  Vec subgradient(const Vec& f) const;

 private:
  BalanceFunction base_;
  ExtensionKind kind_;
};

}  // namespace bck
