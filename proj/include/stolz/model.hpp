#ifndef STOLZ_MODEL_HPP
#define STOLZ_MODEL_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stolz {

/// A state of the system. x is the convection rate, y and z the
/// horizontal and vertical temperature variations.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double norm_sq() const { return x * x + y * y + z * z; }

  Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Point3 operator*(double s) const { return {x * s, y * s, z * s}; }
  bool operator==(const Point3& o) const = default;
};

/// Model coefficients:
///
///   dx = sigma (y - x) dt           + sqrt(2 gamma1) dB1
///   dy = [x (rho - z) - y] dt       + sqrt(2 gamma2) dB2
///   dz = [x y - beta z] dt          + sqrt(2 gamma3) dB3
///
/// sigma > 0, rho >= 0, gamma_i >= 0 with at least one gamma_i > 0 so
/// the system is genuinely stochastic. beta may be any real; the
/// degenerate damping regime of interest is beta <= 0.
struct ModelParams {
  double sigma;
  double rho;
  double beta;
  double gamma1;
  double gamma2;
  double gamma3;

  ModelParams(double sigma_, double rho_, double beta_, double g1, double g2,
              double g3)
      : sigma(sigma_), rho(rho_), beta(beta_), gamma1(g1), gamma2(g2),
        gamma3(g3) {
    validate();
  }

  void validate() const {
    auto bad = [](double v) { return !std::isfinite(v); };
    if (bad(sigma) || bad(rho) || bad(beta) || bad(gamma1) || bad(gamma2) ||
        bad(gamma3))
      throw std::invalid_argument("ModelParams: non-finite coefficient");
    if (sigma <= 0.0) throw std::invalid_argument("ModelParams: sigma must be > 0");
    if (rho < 0.0) throw std::invalid_argument("ModelParams: rho must be >= 0");
    if (gamma1 < 0.0 || gamma2 < 0.0 || gamma3 < 0.0)
      throw std::invalid_argument("ModelParams: gamma_i must be >= 0");
    if (gamma1 == 0.0 && gamma2 == 0.0 && gamma3 == 0.0)
      throw std::invalid_argument(
          "ModelParams: at least one gamma_i must be > 0");
  }

  double gamma_sum() const { return gamma1 + gamma2 + gamma3; }
};

/// Deterministic part of the vector field.
inline Point3 drift(const ModelParams& p, const Point3& q) {
  return {p.sigma * (q.y - q.x),
          q.x * (p.rho - q.z) - q.y,
          q.x * q.y - p.beta * q.z};
}

/// Noise amplitudes (sqrt(2 gamma_i)); the diffusion matrix is diagonal
/// and constant in the state.
inline Point3 diffusion_row(const ModelParams& p) {
  return {std::sqrt(2.0 * p.gamma1), std::sqrt(2.0 * p.gamma2),
          std::sqrt(2.0 * p.gamma3)};
}

}  // namespace stolz

#endif  // STOLZ_MODEL_HPP
