#ifndef STOLZ_SMOOTHNESS_HPP
#define STOLZ_SMOOTHNESS_HPP

#include <cmath>
#include <functional>

#include "stolz/field.hpp"

namespace stolz {

/// Central second difference of a 1-D function.
inline double fd_second(const std::function<double(double)>& f, double t,
                        double h) {
  return (f(t - h) - 2.0 * f(t) + f(t + h)) / (h * h);
}

/// Second difference with one Richardson step, killing the h^2 f''''
/// stencil bias (exact on polynomials of degree <= 5).
inline double fd_second_rich(const std::function<double(double)>& f, double t,
                             double h) {
  return (4.0 * fd_second(f, t, 0.5 * h) - fd_second(f, t, h)) / 3.0;
}

/// One-sided limit of f'' at t0 from side `dir` (+1 or -1), estimated by
/// second differences at t0 + dir*{2,3,4,5}h (each stencil stays
/// strictly on one side of t0) and cubic extrapolation back to t0.
inline double one_sided_d2_limit(const std::function<double(double)>& f,
                                 double t0, int dir, double h) {
  const double s = static_cast<double>(dir);
  const double d2 = fd_second_rich(f, t0 + 2.0 * s * h, h);
  const double d3 = fd_second_rich(f, t0 + 3.0 * s * h, h);
  const double d4 = fd_second_rich(f, t0 + 4.0 * s * h, h);
  const double d5 = fd_second_rich(f, t0 + 5.0 * s * h, h);
  return 10.0 * d2 - 20.0 * d3 + 15.0 * d4 - 4.0 * d5;
}

/// |f''(t0+) - f''(t0-)|; zero (up to FD noise) iff f is C^2 across t0.
/// The default step balances the stencil's value-roundoff (eps |f|/h^2)
/// against extrapolation truncation for fields of size up to ~1e3.
inline double c2_mismatch(const std::function<double(double)>& f, double t0,
                          double h = 1e-3) {
  return std::abs(one_sided_d2_limit(f, t0, +1, h) -
                  one_sided_d2_limit(f, t0, -1, h));
}

/// Restrict a scalar field to the line p + t*dir.
inline std::function<double(double)> line_restriction(const ScalarField& f,
                                                      const Point3& p,
                                                      const Point3& dir) {
  return [f, p, dir](double t) {
    return f(Point3{p.x + t * dir.x, p.y + t * dir.y, p.z + t * dir.z});
  };
}

}  // namespace stolz

#endif  // STOLZ_SMOOTHNESS_HPP
