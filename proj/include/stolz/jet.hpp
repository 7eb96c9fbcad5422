#ifndef STOLZ_JET_HPP
#define STOLZ_JET_HPP

#include <array>
#include <cmath>

#include "stolz/model.hpp"

namespace stolz {

/// Second-order forward-mode Taylor data of a scalar quantity at a point
/// of R^3: value, gradient, and the *diagonal* of the Hessian. Mixed
/// partials are never carried because the diffusion matrix of the model
/// is diagonal, so the generator only touches d_i^2.
///
/// The diagonal truncation is closed under +,-,*,/ and composition with
/// C^2 functions of one variable: d_i^2(fg) = f''_i g + 2 f'_i g'_i + f g''_i
/// needs only the diagonal entries of both factors.
struct Jet2 {
  double v = 0.0;
  std::array<double, 3> g{0.0, 0.0, 0.0};
  std::array<double, 3> h{0.0, 0.0, 0.0};

  bool finite() const {
    if (!std::isfinite(v)) return false;
    for (int i = 0; i < 3; ++i)
      if (!std::isfinite(g[i]) || !std::isfinite(h[i])) return false;
    return true;
  }
};

inline Jet2 jet_const(double c) { return Jet2{c, {0, 0, 0}, {0, 0, 0}}; }

/// Lift coordinate `axis` (0=x, 1=y, 2=z) at value `v`.
inline Jet2 jet_var(double v, int axis) {
  Jet2 j;
  j.v = v;
  j.g[axis] = 1.0;
  return j;
}

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.v = a.v + b.v;
  for (int i = 0; i < 3; ++i) {
    r.g[i] = a.g[i] + b.g[i];
    r.h[i] = a.h[i] + b.h[i];
  }
  return r;
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.v = a.v - b.v;
  for (int i = 0; i < 3; ++i) {
    r.g[i] = a.g[i] - b.g[i];
    r.h[i] = a.h[i] - b.h[i];
  }
  return r;
}

inline Jet2 operator-(const Jet2& a) {
  Jet2 r;
  r.v = -a.v;
  for (int i = 0; i < 3; ++i) {
    r.g[i] = -a.g[i];
    r.h[i] = -a.h[i];
  }
  return r;
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.v = a.v * b.v;
  for (int i = 0; i < 3; ++i) {
    r.g[i] = a.g[i] * b.v + a.v * b.g[i];
    r.h[i] = a.h[i] * b.v + 2.0 * a.g[i] * b.g[i] + a.v * b.h[i];
  }
  return r;
}

inline Jet2 operator+(const Jet2& a, double c) { return a + jet_const(c); }
inline Jet2 operator+(double c, const Jet2& a) { return a + jet_const(c); }
inline Jet2 operator-(const Jet2& a, double c) { return a - jet_const(c); }
inline Jet2 operator-(double c, const Jet2& a) { return jet_const(c) - a; }

inline Jet2 operator*(const Jet2& a, double c) {
  Jet2 r;
  r.v = a.v * c;
  for (int i = 0; i < 3; ++i) {
    r.g[i] = a.g[i] * c;
    r.h[i] = a.h[i] * c;
  }
  return r;
}
inline Jet2 operator*(double c, const Jet2& a) { return a * c; }

/// Compose with a scalar function given value and first two derivatives
/// at a.v.
inline Jet2 jet_apply(const Jet2& a, double u, double du, double ddu) {
  Jet2 r;
  r.v = u;
  for (int i = 0; i < 3; ++i) {
    r.g[i] = du * a.g[i];
    r.h[i] = ddu * a.g[i] * a.g[i] + du * a.h[i];
  }
  return r;
}

inline Jet2 inverse(const Jet2& a) {
  const double iv = 1.0 / a.v;
  return jet_apply(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inverse(b); }
inline Jet2 operator/(const Jet2& a, double c) { return a * (1.0 / c); }
inline Jet2 operator/(double c, const Jet2& b) { return inverse(b) * c; }

inline Jet2 log(const Jet2& a) {
  const double iv = 1.0 / a.v;
  return jet_apply(a, std::log(a.v), iv, -iv * iv);
}

inline Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.v);
  return jet_apply(a, e, e, e);
}

inline Jet2 sin(const Jet2& a) {
  return jet_apply(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v));
}

inline Jet2 cos(const Jet2& a) {
  return jet_apply(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v));
}

inline Jet2 sqrt(const Jet2& a) {
  const double s = std::sqrt(a.v);
  return jet_apply(a, s, 0.5 / s, -0.25 / (s * a.v));
}

/// Real power. For non-integer exponents the base must be positive;
/// a non-positive base yields non-finite components which callers treat
/// as a domain error.
inline Jet2 pow(const Jet2& a, double e) {
  const double p = std::pow(a.v, e);
  const double dp = e * std::pow(a.v, e - 1.0);
  const double ddp = e * (e - 1.0) * std::pow(a.v, e - 2.0);
  return jet_apply(a, p, dp, ddp);
}

/// |a| away from 0. At a.v == 0 the kink makes the jet undefined and
/// NaNs are produced on purpose; every field in this library only
/// evaluates |.| on arguments bounded away from 0.
inline Jet2 abs(const Jet2& a) {
  if (a.v > 0.0) return a;
  if (a.v < 0.0) return -a;
  return jet_apply(a, 0.0, std::nan(""), std::nan(""));
}

inline Jet2 sq(const Jet2& a) { return a * a; }

/// The three coordinate jets at p.
struct JetPoint {
  Jet2 x, y, z;
};

inline JetPoint lift(const Point3& p) {
  return {jet_var(p.x, 0), jet_var(p.y, 1), jet_var(p.z, 2)};
}

}  // namespace stolz

#endif  // STOLZ_JET_HPP
