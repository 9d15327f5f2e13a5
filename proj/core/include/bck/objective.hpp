#pragma once

#include <functional>
#include <memory>
#include <stdexcept>

#include "bck/graph.hpp"
#include "bck/setfn.hpp"

namespace bck {

/// A convex one-homogeneous functional with a subgradient oracle.
struct Functional {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> subgrad;

  explicit operator bool() const { return static_cast<bool>(value); }
};

/// Thrown when a ratio is evaluated at a point with S(f) = 0; callers must
/// resample the initialization.
struct DegeneratePointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// F = R/S = (R₁ − R₂)/(S₁ − S₂), all parts convex and one-homogeneous.
/// The shipped cut objectives have R₂ = S₂ = 0.
class RatioObjective {
 public:
  RatioObjective(Functional r1, Functional s1)
      : r1_(std::move(r1)), s1_(std::move(s1)) {}
  RatioObjective(Functional r1, Functional r2, Functional s1, Functional s2)
      : r1_(std::move(r1)),
        r2_(std::move(r2)),
        s1_(std::move(s1)),
        s2_(std::move(s2)) {}

  /// TV numerator over g, extension denominator.
  static RatioObjective balanced_cut(const Graph& g, Extension ext);

  double r(const Vec& f) const;
  double s(const Vec& f) const;
  double ratio_value(const Vec& f) const;

  double r1_value(const Vec& f) const { return r1_.value(f); }
  Vec r1_subgrad(const Vec& f) const { return r1_.subgrad(f); }
  bool has_r2() const { return static_cast<bool>(r2_); }
  bool has_s2() const { return static_cast<bool>(s2_); }
  double r2_value(const Vec& f) const { return r2_ ? r2_.value(f) : 0.0; }
  Vec r2_subgrad(const Vec& f) const;
  double s1_value(const Vec& f) const { return s1_.value(f); }
  Vec s1_subgrad(const Vec& f) const { return s1_.subgrad(f); }
  double s2_value(const Vec& f) const { return s2_ ? s2_.value(f) : 0.0; }
  Vec s2_subgrad(const Vec& f) const;

 private:
  Functional r1_, r2_, s1_, s2_;
};

/// Nonnegative convex p-homogeneous constraint G with G(f)=0 ⟺ f=0.
class ConstraintFunction {
 public:
  enum class Kind { L2, L2Squared, Custom };

  static ConstraintFunction l2();          // G = ‖·‖₂, p = 1
  static ConstraintFunction l2_squared();  // G = ‖·‖₂², p = 2
  static ConstraintFunction custom(double degree,
                                   std::function<double(const Vec&)> value,
                                   std::function<Vec(const Vec&)> subgrad);

  Kind kind() const { return kind_; }
  double degree() const { return degree_; }
  double value(const Vec& f) const { return value_(f); }
  Vec subgrad(const Vec& f) const { return subgrad_(f); }

  /// Rescales f so that G(f) = 1 (p-homogeneity).
  Vec normalize(const Vec& f) const;

 private:
  ConstraintFunction(Kind k, double p, std::function<double(const Vec&)> v,
                     std::function<Vec(const Vec&)> s)
      : kind_(k), degree_(p), value_(std::move(v)), subgrad_(std::move(s)) {}

  Kind kind_;
  double degree_;
  std::function<double(const Vec&)> value_;
  std::function<Vec(const Vec&)> subgrad_;
};

/// Subgradients frozen at the outer iterate f^k.
struct SubgradientSet {
  Vec r2;  // empty when R₂ = 0
  Vec s1;
  Vec g;
};

SubgradientSet pick_subgradients(const RatioObjective& obj,
                                 const ConstraintFunction& gfun, const Vec& fk);

/// Φ(u) = R₁(u) − ⟨u, r₂⟩ + λ(S₂(u) − ⟨u, s₁⟩) − c⟨u, g⟩.
double inner_objective_value(const RatioObjective& obj,
                             const ConstraintFunction& gfun, const Vec& u,
                             const Vec& fk, double lam, double c,
                             const SubgradientSet& sub);

/// v = r₂(f^k) + λ s₁(f^k) + c g(f^k), so that Φ(u) = R₁(u) + λS₂(u) − ⟨u, v⟩.
Vec linear_term(const RatioObjective& obj, const Vec& fk, double lam, double c,
                const SubgradientSet& sub);

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);

}  // namespace bck
