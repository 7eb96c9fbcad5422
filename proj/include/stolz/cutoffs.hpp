#ifndef STOLZ_CUTOFFS_HPP
#define STOLZ_CUTOFFS_HPP

#include <array>
#include <cmath>

#include "stolz/jet.hpp"

namespace stolz {

// C^2 cutoffs built from the quintic smoothstep
//   s(t) = 6 t^5 - 15 t^4 + 10 t^3,
// which has s(0)=0, s(1)=1 and vanishing first and second derivatives at
// both ends, so every plateau joint below is exactly C^2.

/// s, s', s'' at t (t clamped to [0,1]).
inline std::array<double, 3> smoothstep_d012(double t) {
  if (t <= 0.0) return {0.0, 0.0, 0.0};
  if (t >= 1.0) return {1.0, 0.0, 0.0};
  const double t2 = t * t;
  const double t3 = t2 * t;
  return {((6.0 * t - 15.0) * t + 10.0) * t3,
          ((30.0 * t - 60.0) * t + 30.0) * t2,
          ((120.0 * t - 180.0) * t + 60.0) * t};
}

/// chi: 1 on |u| <= 1, 0 on |u| >= 2, C^2 monotone bridge between.
inline std::array<double, 3> chi_d012(double u) {
  const double a = std::abs(u);
  if (a <= 1.0) return {1.0, 0.0, 0.0};
  if (a >= 2.0) return {0.0, 0.0, 0.0};
  const auto s = smoothstep_d012(a - 1.0);
  const double sgn = u > 0.0 ? 1.0 : -1.0;
  return {1.0 - s[0], -s[1] * sgn, -s[2]};
}

/// chi~: 1 on |u| >= 1, 0 on |u| <= 1/2.
inline std::array<double, 3> chi_tilde_d012(double u) {
  const double a = std::abs(u);
  if (a >= 1.0) return {1.0, 0.0, 0.0};
  if (a <= 0.5) return {0.0, 0.0, 0.0};
  const auto s = smoothstep_d012(2.0 * a - 1.0);
  const double sgn = u > 0.0 ? 1.0 : -1.0;
  return {s[0], 2.0 * s[1] * sgn, 4.0 * s[2]};
}

inline double chi(double u) { return chi_d012(u)[0]; }
inline double chi_tilde(double u) { return chi_tilde_d012(u)[0]; }

// Jet overloads branch on the argument *value* first: on a plateau the
// result is constant, so the incoming derivatives (possibly NaN from an
// |.| kink at 0) are legitimately discarded.

inline Jet2 chi(const Jet2& u) {
  const double a = std::abs(u.v);
  if (a <= 1.0) return jet_const(1.0);
  if (a >= 2.0) return jet_const(0.0);
  const auto d = chi_d012(u.v);
  return jet_apply(u, d[0], d[1], d[2]);
}

inline Jet2 chi_tilde(const Jet2& u) {
  const double a = std::abs(u.v);
  if (a >= 1.0) return jet_const(1.0);
  if (a <= 0.5) return jet_const(0.0);
  const auto d = chi_tilde_d012(u.v);
  return jet_apply(u, d[0], d[1], d[2]);
}

// ---------------------------------------------------------------------
// Odd C^2 truncation family F_N: identity on [-N, N], constant +-(N+1)
// beyond +-(N+2), joined by the bridge
//   h(t) = t - t^3/4 + t^4/16   on [0, 2],
// the unique polynomial of degree <= 5 with h(0)=h''(0)=h'(2)=h''(2)=0,
// h'(0)=1, h(2)=1. h' decreases monotonically from 1 to 0 on [0,2], so
// F_N' lies in [0,1]; max |h''| = 3/4 (attained at t = 1).

/// h, h', h'' at t in [0, 2].
inline std::array<double, 3> trunc_bridge_d012(double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return {t - 0.25 * t3 + t3 * t / 16.0,
          1.0 - 0.75 * t2 + 0.25 * t3,
          -1.5 * t + 0.75 * t2};
}

/// Largest |F_N''| over R (independent of N).
constexpr double kTruncBridgeMaxD2 = 0.75;

/// F_N, F_N', F_N'' at t.
inline std::array<double, 3> trunc_d012(int n, double t) {
  const double a = std::abs(t);
  const double nn = static_cast<double>(n);
  if (a <= nn) return {t, 1.0, 0.0};
  const double sgn = t > 0.0 ? 1.0 : -1.0;
  if (a >= nn + 2.0) return {sgn * (nn + 1.0), 0.0, 0.0};
  const auto b = trunc_bridge_d012(a - nn);
  return {sgn * (b[0] + nn), b[1], sgn * b[2]};
}

inline double trunc(int n, double t) { return trunc_d012(n, t)[0]; }

inline Jet2 trunc(int n, const Jet2& t) {
  const auto d = trunc_d012(n, t.v);
  if (std::abs(t.v) <= static_cast<double>(n))
    return t;  // identity region, exact
  if (std::abs(t.v) >= static_cast<double>(n) + 2.0) return jet_const(d[0]);
  return jet_apply(t, d[0], d[1], d[2]);
}

}  // namespace stolz

#endif  // STOLZ_CUTOFFS_HPP
