#ifndef STOLZ_GENERATOR_HPP
#define STOLZ_GENERATOR_HPP

#include <functional>

#include "stolz/field.hpp"
#include "stolz/jet.hpp"
#include "stolz/model.hpp"

namespace stolz {

/// Infinitesimal generator applied to a jet at p:
///
///   L f = sigma(y-x) d_x f + [x(rho-z)-y] d_y f + [xy - beta z] d_z f
///         + gamma1 d_x^2 f + gamma2 d_y^2 f + gamma3 d_z^2 f
inline double generator_contract(const ModelParams& params, const Point3& p,
                                 const Jet2& j) {
  const Point3 f = drift(params, p);
  return f.x * j.g[0] + f.y * j.g[1] + f.z * j.g[2] + params.gamma1 * j.h[0] +
         params.gamma2 * j.h[1] + params.gamma3 * j.h[2];
}

/// L f at p via second-order forward-mode differentiation.
/// Throws FieldDomainError where the field's jet is not finite.
inline double apply_generator(const ModelParams& params, const ScalarField& f,
                              const Point3& p) {
  return generator_contract(params, p, f.jet_checked(p));
}

/// Magnitude scale of the generator contraction at p, used to express
/// mismatches relative to the size of the terms actually summed.
inline double generator_scale(const ModelParams& params, const Point3& p,
                              const Jet2& j) {
  const Point3 f = drift(params, p);
  return std::abs(f.x * j.g[0]) + std::abs(f.y * j.g[1]) +
         std::abs(f.z * j.g[2]) + std::abs(params.gamma1 * j.h[0]) +
         std::abs(params.gamma2 * j.h[1]) + std::abs(params.gamma3 * j.h[2]);
}

/// Independent oracle: the same quantity via central finite differences
/// of a plain point->real function, O(h^2) truncation. The gradient
/// part uses step h_scale * max(1, |p_i|) per coordinate; the
/// second-difference part uses sqrt(h_scale) * max(1, |p_i|), the
/// balanced step once the f-value roundoff divided by h^2 is accounted
/// for.
inline double apply_generator_fd(const ModelParams& params,
                                 const std::function<double(const Point3&)>& f,
                                 const Point3& p, double h_scale = 1e-5) {
  const Point3 dr = drift(params, p);
  const double f0 = f(p);
  if (!std::isfinite(f0))
    throw FieldDomainError("apply_generator_fd: f not defined here", p);

  const double coords[3] = {p.x, p.y, p.z};
  const double gammas[3] = {params.gamma1, params.gamma2, params.gamma3};
  const double drifts[3] = {dr.x, dr.y, dr.z};
  const double h2_scale = std::sqrt(h_scale);

  auto shifted = [&](int i, double h) {
    Point3 q = p;
    (i == 0 ? q.x : i == 1 ? q.y : q.z) += h;
    const double v = f(q);
    if (!std::isfinite(v))
      throw FieldDomainError("apply_generator_fd: f not defined near here", p);
    return v;
  };

  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double span = std::max(1.0, std::abs(coords[i]));
    const double h1 = h_scale * span;
    acc += drifts[i] * (shifted(i, h1) - shifted(i, -h1)) / (2.0 * h1);
    if (gammas[i] != 0.0) {
      const double h2 = h2_scale * span;
      acc += gammas[i] * (shifted(i, h2) - 2.0 * f0 + shifted(i, -h2)) /
             (h2 * h2);
    }
  }
  return acc;
}

}  // namespace stolz

#endif  // STOLZ_GENERATOR_HPP
