#include "bck/objective.hpp"

#include <cmath>

namespace bck {

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

RatioObjective RatioObjective::balanced_cut(const Graph& g, Extension ext) {
  Functional r1{[&g](const Vec& f) { return total_variation(g, f); },
                [&g](const Vec& f) { return tv_subgradient(g, f); }};
  auto e = std::make_shared<Extension>(std::move(ext));
  Functional s1{[e](const Vec& f) { return e->value(f); },
                [e](const Vec& f) { return e->subgradient(f); }};
  return RatioObjective(std::move(r1), std::move(s1));
}

Vec RatioObjective::r2_subgrad(const Vec& f) const {
  return r2_ ? r2_.subgrad(f) : Vec(f.size(), 0.0);
}

Vec RatioObjective::s2_subgrad(const Vec& f) const {
  return s2_ ? s2_.subgrad(f) : Vec(f.size(), 0.0);
}

double RatioObjective::r(const Vec& f) const {
  double v = r1_.value(f) - r2_value(f);
  if (v < -1e-9 * (1.0 + std::abs(r1_.value(f))))
    throw std::runtime_error("ratio objective: R(f) < 0");
  return v;
}

double RatioObjective::s(const Vec& f) const {
  double v = s1_.value(f) - s2_value(f);
  if (v < -1e-9 * (1.0 + std::abs(s1_.value(f))))
    throw std::runtime_error("ratio objective: S(f) < 0");
  return v;
}

double RatioObjective::ratio_value(const Vec& f) const {
  double sv = s(f);
  if (sv == 0.0)
    throw DegeneratePointError("ratio objective: S(f) = 0, resample f");
  return r(f) / sv;
}

ConstraintFunction ConstraintFunction::l2() {
  return ConstraintFunction(
      Kind::L2, 1.0, [](const Vec& f) { return norm2(f); },
      [](const Vec& f) {
        double nrm = norm2(f);
        Vec g(f.size(), 0.0);
        if (nrm > 0.0)
          for (size_t i = 0; i < f.size(); ++i) g[i] = f[i] / nrm;
        return g;
      });
}

ConstraintFunction ConstraintFunction::l2_squared() {
  return ConstraintFunction(
      Kind::L2Squared, 2.0, [](const Vec& f) { return dot(f, f); },
      [](const Vec& f) {
        Vec g(f.size());
        for (size_t i = 0; i < f.size(); ++i) g[i] = 2.0 * f[i];
        return g;
      });
}

ConstraintFunction ConstraintFunction::custom(
    double degree, std::function<double(const Vec&)> value,
    std::function<Vec(const Vec&)> subgrad) {
  if (degree < 1.0)
    throw std::invalid_argument("constraint function: degree must be >= 1");
  return ConstraintFunction(Kind::Custom, degree, std::move(value),
                            std::move(subgrad));
}

Vec ConstraintFunction::normalize(const Vec& f) const {
  double gv = value(f);
  if (gv <= 0.0)
    throw std::invalid_argument("constraint normalize: G(f) = 0 only at f = 0");
  double scale = std::pow(gv, -1.0 / degree_);
  Vec out(f.size());
  for (size_t i = 0; i < f.size(); ++i) out[i] = f[i] * scale;
  return out;
}

SubgradientSet pick_subgradients(const RatioObjective& obj,
                                 const ConstraintFunction& gfun,
                                 const Vec& fk) {
  SubgradientSet sub;
  if (obj.has_r2()) sub.r2 = obj.r2_subgrad(fk);
  sub.s1 = obj.s1_subgrad(fk);
  sub.g = gfun.subgrad(fk);
  return sub;
}

double inner_objective_value(const RatioObjective& obj,
                             const ConstraintFunction& gfun, const Vec& u,
                             const Vec& fk, double lam, double c,
                             const SubgradientSet& sub) {
  (void)gfun;
  (void)fk;
  double phi = obj.r1_value(u);
  if (!sub.r2.empty()) phi -= dot(u, sub.r2);
  phi += lam * (obj.s2_value(u) - dot(u, sub.s1));
  phi -= c * dot(u, sub.g);
  return phi;
}

Vec linear_term(const RatioObjective& obj, const Vec& fk, double lam, double c,
                const SubgradientSet& sub) {
  (void)obj;
  Vec v(fk.size(), 0.0);
  for (size_t i = 0; i < v.size(); ++i) {
    double x = lam * sub.s1[i] + c * sub.g[i];
    if (!sub.r2.empty()) x += sub.r2[i];
    v[i] = x;
  }
  return v;
}

}  // namespace bck
