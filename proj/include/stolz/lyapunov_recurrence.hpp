#ifndef STOLZ_LYAPUNOV_RECURRENCE_HPP
#define STOLZ_LYAPUNOV_RECURRENCE_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stolz/cutoffs.hpp"
#include "stolz/field.hpp"
#include "stolz/generator.hpp"
#include "stolz/jet.hpp"
#include "stolz/model.hpp"

namespace stolz {

// Test functions certifying positive recurrence for beta = 0. The
// composite V = H~ + theta1 psi1 + theta2 psi2 glues region-specific
// asymptotic solutions with C^2 plateau cutoffs; the regions are
//
//   R0 = { x^2 + y^2 >= R_0 }
//   R1 = { x^2 + y^2 <= R_0, |x||z|^{1/3} >= R_1, |z| >= R_3 }
//   R2 = { x^2 + y^2 <= R_2, |x||z|^{1/3} <= R_1, |z| >= R_3 }
//
// with the compact remainder K = { x^2 + y^2 <= R_0, |z| <= R_3 }.

/// Region radii and Lyapunov weights for the composite V.
struct RecurrenceParams {
  double R0 = 1.0;
  double R1 = 1.0;
  double R2 = 1.0;
  double R3 = 1.0;
  double kappa0 = 1.0;
  double kappa1 = 1.0;
  double kappa2 = 1.0;

  void validate(const ModelParams& mp, bool certificate_grade = false) const {
    if (!(R0 >= 1.0 && R1 >= 1.0 && R2 >= 1.0 && R3 >= 1.0))
      throw std::invalid_argument("RecurrenceParams: radii must be >= 1");
    if (R2 < R0)
      throw std::invalid_argument("RecurrenceParams: requires R2 >= R0");
    if (!(kappa0 > 0.0 && kappa1 > 0.0 && kappa2 > 0.0))
      throw std::invalid_argument("RecurrenceParams: weights must be > 0");
    if (certificate_grade) {
      const double floor = 4.0 * mp.gamma_sum();
      if (kappa1 < floor || kappa2 < floor)
        throw std::invalid_argument(
            "RecurrenceParams: kappa1, kappa2 must be >= 4(g1+g2+g3)");
    }
  }
};

inline bool in_region_R0(const RecurrenceParams& rp, const Point3& p) {
  return p.x * p.x + p.y * p.y >= rp.R0;
}
inline bool in_region_R1(const RecurrenceParams& rp, const Point3& p) {
  const double az = std::abs(p.z);
  return p.x * p.x + p.y * p.y <= rp.R0 &&
         std::abs(p.x) * std::cbrt(az) >= rp.R1 && az >= rp.R3;
}
inline bool in_region_R2(const RecurrenceParams& rp, const Point3& p) {
  const double az = std::abs(p.z);
  return p.x * p.x + p.y * p.y <= rp.R2 &&
         std::abs(p.x) * std::cbrt(az) <= rp.R1 && az >= rp.R3;
}
inline bool in_region_K(const RecurrenceParams& rp, const Point3& p) {
  return p.x * p.x + p.y * p.y <= rp.R0 && std::abs(p.z) <= rp.R3;
}

// --------------------------------------------------------------------
// Fields

/// H = x^2 + y^2 + z^2 - 2(sigma+rho) z, the natural energy functional.
inline ScalarField field_H(const ModelParams& mp) {
  const double s = 2.0 * (mp.sigma + mp.rho);
  return ScalarField("H", [s](const JetPoint& q) {
    return sq(q.x) + sq(q.y) + sq(q.z) - s * q.z;
  });
}

/// H~ = x^2 + y^2 + z^2 - 2 sigma z + kappa0 (rho = 0 reduced system).
inline ScalarField field_H_tilde(const ModelParams& mp, double kappa0) {
  const double s = 2.0 * mp.sigma;
  return ScalarField("H_tilde", [s, kappa0](const JetPoint& q) {
    return sq(q.x) + sq(q.y) + sq(q.z) - s * q.z + kappa0;
  });
}

/// M = 2 sigma z - x^2, the growth witness for the z-instability.
inline ScalarField field_M(const ModelParams& mp) {
  const double s = 2.0 * mp.sigma;
  return ScalarField(
      "M", [s](const JetPoint& q) { return s * q.z - sq(q.x); });
}

/// psi1 = kappa1 y / (x z); only C^2 away from {x = 0} u {z = 0}.
inline ScalarField field_psi1(double kappa1) {
  return ScalarField("psi1", [kappa1](const JetPoint& q) {
    return kappa1 * q.y / (q.x * q.z);
  });
}

/// psi2 = (kappa2 / 2 gamma1) (4 R1^2 / |z|^{2/3} - x^2). |z|^{2/3} is
/// realized as (z^2)^{1/3} so jets stay exact away from z = 0.
inline ScalarField field_psi2(const ModelParams& mp, double kappa2,
                              double R1) {
  if (!(mp.gamma1 > 0.0))
    throw std::invalid_argument("field_psi2: requires gamma1 > 0");
  const double c = kappa2 / (2.0 * mp.gamma1);
  const double r = 4.0 * R1 * R1;
  return ScalarField("psi2", [c, r](const JetPoint& q) {
    return c * (r * pow(sq(q.z), -1.0 / 3.0) - sq(q.x));
  });
}

namespace detail {

inline Jet2 theta1_jet(const RecurrenceParams& rp, const JetPoint& q) {
  const Jet2 u0 = (sq(q.x) + sq(q.y)) / rp.R0;
  const Jet2 u1 = abs(q.x) * pow(sq(q.z), 1.0 / 6.0) / rp.R1;
  const Jet2 u3 = abs(q.z) / rp.R3;
  return chi(u0) * chi_tilde(u1) * chi_tilde(u3);
}

inline Jet2 theta2_jet(const RecurrenceParams& rp, const JetPoint& q) {
  const Jet2 u0 = (sq(q.x) + sq(q.y)) / rp.R2;
  const Jet2 u1 = abs(q.x) * pow(sq(q.z), 1.0 / 6.0) / rp.R1;
  const Jet2 u3 = abs(q.z) / rp.R3;
  return chi(u0) * chi(u1) * chi_tilde(u3);
}

// Where the cutoff is not identically zero. Inside these sets the psi
// singularities are excised: |x||z|^{1/3} > R1/2 and |z| > R3/2 on
// supp theta1, |z| > R3/2 on supp theta2.
inline bool theta1_support(const RecurrenceParams& rp, double x, double y,
                           double z) {
  const double az = std::abs(z);
  return (x * x + y * y) < 2.0 * rp.R0 &&
         std::abs(x) * std::cbrt(az) > 0.5 * rp.R1 && az > 0.5 * rp.R3;
}
inline bool theta2_support(const RecurrenceParams& rp, double x, double y,
                           double z) {
  const double az = std::abs(z);
  return (x * x + y * y) < 2.0 * rp.R2 &&
         std::abs(x) * std::cbrt(az) < 2.0 * rp.R1 && az > 0.5 * rp.R3;
}

inline Jet2 psi1_jet(double kappa1, const JetPoint& q) {
  return kappa1 * q.y / (q.x * q.z);
}

inline Jet2 psi2_jet(const ModelParams& mp, double kappa2, double R1,
                     const JetPoint& q) {
  const double c = kappa2 / (2.0 * mp.gamma1);
  return c * (4.0 * R1 * R1 * pow(sq(q.z), -1.0 / 3.0) - sq(q.x));
}

}  // namespace detail

inline ScalarField field_theta1(const RecurrenceParams& rp) {
  return ScalarField("theta1", [rp](const JetPoint& q) {
    return detail::theta1_jet(rp, q);
  });
}

inline ScalarField field_theta2(const RecurrenceParams& rp) {
  return ScalarField("theta2", [rp](const JetPoint& q) {
    return detail::theta2_jet(rp, q);
  });
}

/// V = H~ + theta1 psi1 + theta2 psi2, globally C^2: each psi term is
/// only evaluated on the support of its cutoff, where it is smooth.
inline ScalarField field_V(const ModelParams& mp, const RecurrenceParams& rp) {
  if (!(mp.gamma1 > 0.0))
    throw std::invalid_argument("field_V: requires gamma1 > 0");
  return ScalarField("V", [mp, rp](const JetPoint& q) {
    Jet2 r = sq(q.x) + sq(q.y) + sq(q.z) - 2.0 * mp.sigma * q.z + rp.kappa0;
    if (detail::theta1_support(rp, q.x.v, q.y.v, q.z.v))
      r = r + detail::theta1_jet(rp, q) * detail::psi1_jet(rp.kappa1, q);
    if (detail::theta2_support(rp, q.x.v, q.y.v, q.z.v))
      r = r + detail::theta2_jet(rp, q) *
                  detail::psi2_jet(mp, rp.kappa2, rp.R1, q);
    return r;
  });
}

// --------------------------------------------------------------------
// Closed-form generator images. These are both oracles for the jet
// machinery and the numerically stable evaluation path: at ladder
// depths |z| ~ 1e12+ the raw contraction drift . grad V cancels pairs
// of O(|xyz|) terms that double precision cannot resolve, while each
// term below stays at its analytic magnitude.

/// L H = -2(sigma x^2 + y^2) - 2 beta z^2 + 2 beta (sigma+rho) z
///       + 2(gamma1+gamma2+gamma3).
inline double lh_closed(const ModelParams& mp, const Point3& p) {
  return -2.0 * (mp.sigma * p.x * p.x + p.y * p.y) -
         2.0 * mp.beta * p.z * p.z +
         2.0 * mp.beta * (mp.sigma + mp.rho) * p.z + 2.0 * mp.gamma_sum();
}

/// L M = 2 sigma (x^2 - beta z) - 2 gamma1.
inline double lm_closed(const ModelParams& mp, const Point3& p) {
  return 2.0 * mp.sigma * (p.x * p.x - mp.beta * p.z) - 2.0 * mp.gamma1;
}

/// L H~ (kappa0 drops out).
inline double l_htilde_closed(const ModelParams& mp, const Point3& p) {
  return -2.0 * mp.sigma * p.x * p.x - 2.0 * p.y * p.y +
         2.0 * mp.rho * p.x * p.y - 2.0 * mp.beta * p.z * p.z +
         2.0 * mp.sigma * mp.beta * p.z + 2.0 * mp.gamma_sum();
}

/// L psi1, expanded term by term; requires x != 0, z != 0.
inline double l_psi1_closed(const ModelParams& mp, double kappa1,
                            const Point3& p) {
  const double x = p.x, y = p.y, z = p.z;
  return kappa1 *
         (-mp.sigma * (y - x) * y / (x * x * z) + mp.rho / z - 1.0 -
          y / (x * z) + mp.beta * y / (x * z) - y * y / (z * z) +
          2.0 * mp.gamma1 * y / (x * x * x * z) +
          2.0 * mp.gamma3 * y / (x * z * z * z));
}

/// L psi2; requires z != 0 and gamma1 > 0.
inline double l_psi2_closed(const ModelParams& mp, double kappa2, double R1,
                            const Point3& p) {
  const double x = p.x, y = p.y, z = p.z;
  const double z2 = z * z;
  const double zm43 = std::pow(z2, -4.0 / 3.0);  // |z|^{-8/3}
  const double r2 = R1 * R1;
  const double dz = -(4.0 * r2 * kappa2 / (3.0 * mp.gamma1)) * z * zm43;
  const double dzz = (20.0 * r2 * kappa2 / (9.0 * mp.gamma1)) * zm43;
  return -mp.sigma * (y - x) * x * kappa2 / mp.gamma1 +
         (x * y - mp.beta * z) * dz - kappa2 + mp.gamma3 * dzz;
}

/// L V via the product-rule breakdown
///   L V = L H~ + theta1 L psi1 + psi1 L theta1 + 2 grad_g theta1 . grad_g psi1
///            + theta2 L psi2 + psi2 L theta2 + 2 grad_g theta2 . grad_g psi2,
/// grad_g = (gamma1 d_x, gamma2 d_y, gamma3 d_z). Each summand is
/// evaluated at its analytic scale, so the result is reliable on the
/// whole verification ladder.
inline double recurrence_drift(const ModelParams& mp,
                               const RecurrenceParams& rp, const Point3& p) {
  const JetPoint q = lift(p);
  double acc = l_htilde_closed(mp, p);
  if (detail::theta1_support(rp, p.x, p.y, p.z)) {
    const Jet2 th = detail::theta1_jet(rp, q);
    const Jet2 ps = detail::psi1_jet(rp.kappa1, q);
    acc += th.v * l_psi1_closed(mp, rp.kappa1, p);
    acc += ps.v * generator_contract(mp, p, th);
    acc += 2.0 * (mp.gamma1 * th.g[0] * ps.g[0] + mp.gamma2 * th.g[1] * ps.g[1] +
                  mp.gamma3 * th.g[2] * ps.g[2]);
  }
  if (detail::theta2_support(rp, p.x, p.y, p.z)) {
    const Jet2 th = detail::theta2_jet(rp, q);
    const Jet2 ps = detail::psi2_jet(mp, rp.kappa2, rp.R1, q);
    acc += th.v * l_psi2_closed(mp, rp.kappa2, rp.R1, p);
    acc += ps.v * generator_contract(mp, p, th);
    acc += 2.0 * (mp.gamma1 * th.g[0] * ps.g[0] + mp.gamma2 * th.g[1] * ps.g[1] +
                  mp.gamma3 * th.g[2] * ps.g[2]);
  }
  return acc;
}

}  // namespace stolz

#endif  // STOLZ_LYAPUNOV_RECURRENCE_HPP
