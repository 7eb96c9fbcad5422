#ifndef STOLZ_LYAPUNOV_TRANSIENCE_HPP
#define STOLZ_LYAPUNOV_TRANSIENCE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "stolz/field.hpp"
#include "stolz/jet.hpp"
#include "stolz/model.hpp"

namespace stolz {

// Two-function non-existence certificate for beta < 0.
//
// V1 = Psi(lambda (2 sigma z - x^2 - A)) where Psi is 0 on (-inf, 0),
// (1 - cos)^2 on [0, B], and a double logarithm beyond B, with the
// matching constants (c0, c1, c2) solved so Psi is C^2 at B.
// V2 = ln(H + kappa0) / K with K an upper bound for L ln(H + kappa0).

constexpr double kTwoPiOverThree = 2.0943951023931954923084289221863;

/// f = (1 - cos)^2 with first two derivatives.
inline std::array<double, 3> transience_profile_d012(double t) {
  const double c = std::cos(t), s = std::sin(t);
  const double w = 1.0 - c;
  return {w * w, 2.0 * w * s, 2.0 * (s * s + c - c * c)};
}

/// The solved constants of the construction.
struct TransienceParams {
  double A = 0.0;       // (2 gamma1 + 2)/|beta|
  double m = 0.0;       // max(2 gamma1, 2 sigma^2 gamma3)
  double B = 0.0;       // profile/double-log switch, slightly above 2 pi/3
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double lambda = 0.0;  // in (0, 1)
  double K = 0.0;       // bound on L ln(H + kappa0)
  double kappa0 = 0.0;  // (sigma+rho)^2 + e, keeps H + kappa0 >= e

  void validate() const {
    if (!(B > kTwoPiOverThree))
      throw std::invalid_argument("TransienceParams: B must exceed 2 pi / 3");
    if (!(B + c1 > 1.0))
      throw std::invalid_argument("TransienceParams: requires B + c1 > 1");
    if (!(c0 > 0.0))
      throw std::invalid_argument("TransienceParams: requires c0 > 0");
    if (!(lambda > 0.0 && lambda < 1.0))
      throw std::invalid_argument("TransienceParams: lambda must be in (0,1)");
    const double t = B + c1;
    if (lambda * m * (1.0 + std::log(t)) / (t * std::log(t)) > 1.0)
      throw std::invalid_argument(
          "TransienceParams: lambda inequality violated");
    if (!(K > 0.0)) throw std::invalid_argument("TransienceParams: K <= 0");
  }
};

/// Psi with first two derivatives at t. The double-log branch value is
/// anchored at f(B) and accumulated through log1p, because the naive
/// c0 lnln(t + c1) + c2 form cancels two numbers of size |c2| down to
/// O(1) and the lost digits would dominate any finite-difference probe
/// near the joint.
inline std::array<double, 3> psi_d012(const TransienceParams& tp, double t) {
  if (t < 0.0) return {0.0, 0.0, 0.0};
  if (t <= tp.B) return transience_profile_d012(t);
  const double uB = tp.B + tp.c1;  // > 1
  const double LB = std::log(uB);
  const double u = t + tp.c1;
  const double L = std::log(u);
  const double uL = u * L;
  const double fB = transience_profile_d012(tp.B)[0];
  const double value =
      fB + tp.c0 * std::log1p(std::log1p((t - tp.B) / uB) / LB);
  return {value, tp.c0 / uL, -tp.c0 * (1.0 + L) / (uL * uL)};
}

/// Solves B, c0, c1, c2, lambda, K for the given parameters (beta < 0).
/// B is found by bisection on f' + m f'' (strictly decreasing on
/// (2pi/3, pi)) and backed off by 10% so the profile condition
/// f' >= -m f'' holds with slack; c1 by bisection on the decreasing map
/// t -> (1 + ln t)/(t ln t); lambda takes a 0.99 safety factor.
///
/// K is estimated separately (it needs sampling); see
/// estimate_log_energy_drift_bound in certify.hpp. Pass k_bound if
/// already known, else it is left at 0 and must be filled before use.
inline TransienceParams solve_transience_constants(const ModelParams& mp,
                                                   double k_bound = 0.0) {
  if (!(mp.beta < 0.0))
    throw std::invalid_argument(
        "solve_transience_constants: requires beta < 0");
  TransienceParams tp;
  const double abs_beta = -mp.beta;
  tp.A = (2.0 * mp.gamma1 + 2.0) / abs_beta;
  tp.m = std::max(2.0 * mp.gamma1, 2.0 * mp.sigma * mp.sigma * mp.gamma3);
  tp.kappa0 = (mp.sigma + mp.rho) * (mp.sigma + mp.rho) + std::exp(1.0);

  // g = f' + m f'' is positive at 2pi/3 (f'(2pi/3) = 3 sqrt(3)/2,
  // f''(2pi/3) = 0) and g(pi) = -4m < 0, and g' = f'' + m f''' < 0 on
  // the interval, so the root is unique.
  auto g = [&](double t) {
    const auto f = transience_profile_d012(t);
    return f[1] + tp.m * f[2];
  };
  double lo = kTwoPiOverThree, hi = 3.14159265358979323846;
  if (!(g(hi) < 0.0))
    throw std::runtime_error("solve_transience_constants: no admissible B");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  tp.B = kTwoPiOverThree + 0.9 * (lo - kTwoPiOverThree);

  const auto fB = transience_profile_d012(tp.B);
  const double ratio = -fB[2] / fB[1];  // > 0 since f'' < 0, f' > 0 at B
  if (!(ratio > 0.0))
    throw std::runtime_error("solve_transience_constants: degenerate B");

  // (1 + ln t)/(t ln t) = ratio, t > 1.
  auto match = [](double t) {
    const double L = std::log(t);
    return (1.0 + L) / (t * L);
  };
  double tlo = 1.0 + 1e-12, thi = 2.0;
  while (match(thi) > ratio) thi *= 2.0;
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (tlo + thi);
    (match(mid) > ratio ? tlo : thi) = mid;
  }
  const double t = 0.5 * (tlo + thi);
  tp.c1 = t - tp.B;
  tp.c0 = fB[1] * t * std::log(t);
  tp.c2 = fB[0] - tp.c0 * std::log(std::log(t));
  tp.lambda = 0.99 * std::min(1.0, 1.0 / (tp.m * ratio));
  tp.K = k_bound;
  return tp;
}

/// V1 = Psi(lambda (2 sigma z - x^2 - A)).
inline ScalarField field_V1(const ModelParams& mp, const TransienceParams& tp) {
  return ScalarField("V1", [mp, tp](const JetPoint& q) {
    const Jet2 zeta = tp.lambda * (2.0 * mp.sigma * q.z - sq(q.x) - tp.A);
    const auto d = psi_d012(tp, zeta.v);
    if (zeta.v < 0.0) return jet_const(0.0);
    return jet_apply(zeta, d[0], d[1], d[2]);
  });
}

/// V2 = ln(H + kappa0)/K, positive everywhere once kappa0 >= (sigma+rho)^2 + e.
inline ScalarField field_V2(const ModelParams& mp, double k_bound,
                            double kappa0) {
  const double s = mp.sigma + mp.rho;
  return ScalarField("V2", [s, k_bound, kappa0](const JetPoint& q) {
    const Jet2 hs =
        sq(q.x) + sq(q.y) + sq(q.z - jet_const(s)) + (kappa0 - s * s);
    return log(hs) / k_bound;
  });
}

/// L ln(H + kappa0) in closed form:
///   L W2 = (L H)/(H + kappa0) - 4(g1 x^2 + g2 y^2 + g3 (z-s)^2)/(H+kappa0)^2.
/// The denominator is computed in the shifted form x^2+y^2+(z-s)^2 + e
/// so no cancellation occurs near the vertex.
inline double log_energy_drift(const ModelParams& mp, double kappa0,
                               const Point3& p) {
  const double s = mp.sigma + mp.rho;
  const double zs = p.z - s;
  const double den =
      p.x * p.x + p.y * p.y + zs * zs + (kappa0 - s * s);
  const double num1 = -2.0 * (mp.sigma * p.x * p.x + p.y * p.y) -
                      2.0 * mp.beta * p.z * p.z + 2.0 * mp.beta * s * p.z +
                      2.0 * mp.gamma_sum();
  const double num2 = 4.0 * (mp.gamma1 * p.x * p.x + mp.gamma2 * p.y * p.y +
                             mp.gamma3 * zs * zs);
  return num1 / den - num2 / (den * den);
}

/// L V1 in closed form (the x y drift contributions cancel exactly):
///   L V1 = lambda Psi' (2 sigma x^2 - 2 sigma beta z - 2 gamma1)
///        + lambda^2 Psi'' (4 gamma1 x^2 + 4 sigma^2 gamma3).
inline double transience_drift_v1(const ModelParams& mp,
                                  const TransienceParams& tp,
                                  const Point3& p) {
  const double zeta =
      tp.lambda * (2.0 * mp.sigma * p.z - p.x * p.x - tp.A);
  const auto d = psi_d012(tp, zeta);
  const double a =
      2.0 * mp.sigma * p.x * p.x - 2.0 * mp.sigma * mp.beta * p.z -
      2.0 * mp.gamma1;
  const double b =
      4.0 * mp.gamma1 * p.x * p.x + 4.0 * mp.sigma * mp.sigma * mp.gamma3;
  return tp.lambda * d[1] * a + tp.lambda * tp.lambda * d[2] * b;
}

}  // namespace stolz

#endif  // STOLZ_LYAPUNOV_TRANSIENCE_HPP
