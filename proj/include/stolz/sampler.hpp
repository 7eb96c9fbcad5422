#ifndef STOLZ_SAMPLER_HPP
#define STOLZ_SAMPLER_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stolz/lyapunov_recurrence.hpp"
#include "stolz/model.hpp"
#include "stolz/rng.hpp"

namespace stolz {

/// Additive-recurrence (Kronecker) low-discrepancy sequence in up to 5
/// dimensions, using the generalized golden ratio. Deterministic given
/// the seed, which only shifts the origin of the lattice.
class QuasiSequence {
 public:
  explicit QuasiSequence(std::uint64_t seed, std::uint64_t stream = 0)
      : n_(0) {
    // alpha_i = phi^-i with phi the d=5 plastic-type constant
    // (x^{d+1} = x + 1).
    double phi = 1.2;
    for (int i = 0; i < 64; ++i) phi = std::pow(1.0 + phi, 1.0 / 6.0);
    double a = 1.0;
    for (int i = 0; i < 5; ++i) {
      a /= phi;
      alpha_[i] = a;
      offset_[i] = counter_uniform(seed, stream, 0x5eedULL, i);
    }
  }

  std::array<double, 5> next() {
    ++n_;
    std::array<double, 5> u;
    for (int i = 0; i < 5; ++i) {
      double v = offset_[i] + static_cast<double>(n_) * alpha_[i];
      u[i] = v - std::floor(v);
    }
    return u;
  }

 private:
  std::array<double, 5> alpha_;
  std::array<double, 5> offset_;
  std::uint64_t n_;
};

/// A sampleable region: membership predicate plus a map from the unit
/// cube that lands in (or near) the region; emitted samples always
/// satisfy the predicate (rejection on the residual mismatch).
struct RegionSpec {
  std::string name;
  std::function<bool(const Point3&)> contains;
  std::function<Point3(const std::array<double, 5>&)> map;
};

/// Draw up to `want` region samples; gives up after want * max_tries
/// mapped candidates (an empty result means the mapped cell misses the
/// region, e.g. a geometrically empty shell).
inline std::vector<Point3> sample_region(const RegionSpec& region, int want,
                                         std::uint64_t seed,
                                         int max_tries = 64) {
  QuasiSequence seq(seed);
  std::vector<Point3> out;
  out.reserve(want);
  const long budget = static_cast<long>(want) * max_tries;
  for (long i = 0; i < budget && static_cast<long>(out.size()) < want; ++i) {
    const Point3 p = region.map(seq.next());
    if (p.finite() && region.contains(p)) out.push_back(p);
  }
  return out;
}

namespace detail {

inline double lerp_log(double lo, double hi, double u) {
  return std::exp(std::log(lo) + u * (std::log(hi) - std::log(lo)));
}
inline double pick_sign(double u) { return u < 0.5 ? -1.0 : 1.0; }

}  // namespace detail

/// Verification shells for the three recurrence regions. Shell k
/// covers |z| in [R3 2^k, R3 2^{k+1}]; region R0 additionally gets a
/// base shell |z| <= R3. Radial coordinates are drawn log-uniformly so
/// the near-boundary band (where the drift margin is tightest) is
/// densely probed across all magnitudes. Truncation: x^2 + y^2 <= 4 R2.
inline std::vector<RegionSpec> recurrence_region_shells(
    const RecurrenceParams& rp, int region, int ladder_steps) {
  std::vector<RegionSpec> shells;
  const double r_xy_max = 2.0 * std::sqrt(rp.R2);

  auto add_R0 = [&](double z_lo, double z_hi, const std::string& tag) {
    RegionSpec s;
    s.name = "R0" + tag;
    s.contains = [rp, z_lo, z_hi, r_xy_max](const Point3& p) {
      const double r2 = p.x * p.x + p.y * p.y;
      const double az = std::abs(p.z);
      return r2 >= rp.R0 && r2 <= r_xy_max * r_xy_max && az >= z_lo &&
             az <= z_hi;
    };
    s.map = [rp, z_lo, z_hi, r_xy_max](const std::array<double, 5>& u) {
      const double r = detail::lerp_log(std::sqrt(rp.R0), r_xy_max, u[0]);
      const double az = detail::lerp_log(std::max(z_lo, 1e-3), z_hi, u[2]);
      // |x| log-uniform across all magnitudes: the tight corners of the
      // composite drift live at |x| ~ R1/|z|^{1/3}, far below the
      // radius, and an angle-uniform draw would never see them
      const double sx = u[1] < 0.5 ? -1.0 : 1.0;
      const double ax =
          detail::lerp_log(r * 1e-14, r, std::abs(2.0 * u[1] - 1.0));
      const double ay = std::sqrt(std::max(0.0, r * r - ax * ax));
      return Point3{sx * ax, detail::pick_sign(u[4]) * ay,
                    detail::pick_sign(u[3]) * az};
    };
    shells.push_back(std::move(s));
  };

  auto add_R1 = [&](double z_lo, double z_hi, const std::string& tag) {
    RegionSpec s;
    s.name = "R1" + tag;
    s.contains = [rp, z_lo, z_hi](const Point3& p) {
      const double az = std::abs(p.z);
      return in_region_R1(rp, p) && az >= z_lo && az <= z_hi;
    };
    s.map = [rp, z_lo, z_hi](const std::array<double, 5>& u) {
      const double az = detail::lerp_log(z_lo, z_hi, u[2]);
      const double x_min = rp.R1 / std::cbrt(az);
      const double x_max = std::sqrt(rp.R0);
      if (x_min >= x_max) return Point3{0, 0, 0};  // empty slice, rejected
      const double ax = detail::lerp_log(x_min, x_max, u[0]);
      const double y_max = std::sqrt(std::max(0.0, rp.R0 - ax * ax));
      return Point3{detail::pick_sign(u[4]) * ax,
                    (2.0 * u[1] - 1.0) * y_max,
                    detail::pick_sign(u[3]) * az};
    };
    shells.push_back(std::move(s));
  };

  auto add_R2 = [&](double z_lo, double z_hi, const std::string& tag) {
    RegionSpec s;
    s.name = "R2" + tag;
    s.contains = [rp, z_lo, z_hi](const Point3& p) {
      const double az = std::abs(p.z);
      return in_region_R2(rp, p) && az >= z_lo && az <= z_hi;
    };
    s.map = [rp, z_lo, z_hi](const std::array<double, 5>& u) {
      const double az = detail::lerp_log(z_lo, z_hi, u[2]);
      const double x_cap = std::min(std::sqrt(rp.R2), rp.R1 / std::cbrt(az));
      const double ax = detail::lerp_log(x_cap * 1e-8, x_cap, u[0]);
      const double y_cap = std::sqrt(std::max(0.0, rp.R2 - ax * ax));
      // fold u[1] into a sign and a log magnitude; small |y| is where
      // the drift margin is tightest, so it must be covered at every
      // scale
      const double sy = u[1] < 0.5 ? -1.0 : 1.0;
      const double vy = std::abs(2.0 * u[1] - 1.0);
      const double ay =
          detail::lerp_log(std::min(1e-8, 1e-8 * y_cap), y_cap, vy);
      return Point3{detail::pick_sign(u[4]) * ax, sy * ay,
                    detail::pick_sign(u[3]) * az};
    };
    shells.push_back(std::move(s));
  };

  for (int k = -1; k < ladder_steps; ++k) {
    const double z_lo = (k < 0) ? 0.0 : rp.R3 * std::pow(2.0, k);
    const double z_hi = rp.R3 * std::pow(2.0, k + 1);
    const std::string tag = "/shell" + std::to_string(k + 1);
    if (region == 0) {
      add_R0(z_lo, z_hi, tag);
    } else if (k >= 0) {  // R1, R2 require |z| >= R3
      if (region == 1)
        add_R1(z_lo, z_hi, tag);
      else
        add_R2(z_lo, z_hi, tag);
    }
  }
  return shells;
}

/// The compact remainder K = { x^2+y^2 <= R0, |z| <= R3 }.
inline RegionSpec recurrence_region_K(const RecurrenceParams& rp) {
  RegionSpec s;
  s.name = "K";
  s.contains = [rp](const Point3& p) { return in_region_K(rp, p); };
  s.map = [rp](const std::array<double, 5>& u) {
    const double r = std::sqrt(rp.R0 * u[0]);
    const double phi = 2.0 * 3.14159265358979323846 * u[1];
    return Point3{r * std::cos(phi), r * std::sin(phi),
                  (2.0 * u[2] - 1.0) * rp.R3};
  };
  return s;
}

/// Spherical shells |X| in [R 2^k, R 2^{k+1}], k = 0..ladder-1, for the
/// transience checks; radius log-uniform, direction quasi-uniform.
inline std::vector<RegionSpec> sphere_shells(double R, int ladder_steps) {
  std::vector<RegionSpec> shells;
  for (int k = 0; k < ladder_steps; ++k) {
    const double lo = R * std::pow(2.0, k);
    const double hi = R * std::pow(2.0, k + 1);
    RegionSpec s;
    s.name = "shell" + std::to_string(k);
    s.contains = [lo, hi](const Point3& p) {
      const double n = p.norm();
      return n >= lo && n <= hi;
    };
    s.map = [lo, hi](const std::array<double, 5>& u) {
      const double r = detail::lerp_log(lo, hi, u[0]);
      const double cz = 2.0 * u[1] - 1.0;
      const double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
      const double phi = 2.0 * 3.14159265358979323846 * u[2];
      return Point3{r * sz * std::cos(phi), r * sz * std::sin(phi), r * cz};
    };
    shells.push_back(std::move(s));
  }
  return shells;
}

/// Quasi-uniform points on the sphere |X| = S.
inline std::vector<Point3> sphere_points(double S, int n,
                                         std::uint64_t seed) {
  QuasiSequence seq(seed);
  std::vector<Point3> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const auto u = seq.next();
    const double cz = 2.0 * u[0] - 1.0;
    const double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
    const double phi = 2.0 * 3.14159265358979323846 * u[1];
    out.push_back({S * sz * std::cos(phi), S * sz * std::sin(phi), S * cz});
  }
  return out;
}

}  // namespace stolz

#endif  // STOLZ_SAMPLER_HPP
