#ifndef STOLZ_SIMULATE_HPP
#define STOLZ_SIMULATE_HPP

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <vector>

#include "stolz/model.hpp"
#include "stolz/rng.hpp"

namespace stolz {

/// A state passes this threshold and we stop integrating: the dynamics
/// themselves are nonexplosive, so anything this large is a numeric
/// overflow on its way to +-inf (expected behavior for beta < 0).
constexpr double kEscapeThreshold = 1e12;

inline bool escaped(const Point3& p) {
  return !p.finite() || std::abs(p.x) > kEscapeThreshold ||
         std::abs(p.y) > kEscapeThreshold || std::abs(p.z) > kEscapeThreshold;
}

/// One Euler-Maruyama step. `noise` is a standard-normal triple already
/// scaled by sqrt(dt); the caller owns the stream.
inline Point3 step_em(const ModelParams& params, const Point3& p, double dt,
                      const std::array<double, 3>& noise) {
  const Point3 f = drift(params, p);
  const Point3 g = diffusion_row(params);
  return {p.x + f.x * dt + g.x * noise[0],
          p.y + f.y * dt + g.y * noise[1],
          p.z + f.z * dt + g.z * noise[2]};
}

/// Uniformly spaced trajectory. Immutable after construction; identical
/// (params, p0, dt, n_steps, seed, traj_id) reproduce it bit-for-bit.
struct Trajectory {
  std::vector<double> times;
  std::vector<Point3> states;
  std::uint64_t seed = 0;
  double step = 0.0;
  bool escaped = false;  // truncated at the first non-finite/overflowing state

  std::size_t size() const { return states.size(); }
};

inline Trajectory simulate(const ModelParams& params, const Point3& p0,
                           double dt, std::size_t n_steps, std::uint64_t seed,
                           std::uint64_t traj_id = 0) {
  if (!(dt > 0.0)) throw std::invalid_argument("simulate: dt must be > 0");
  if (!p0.finite()) throw std::invalid_argument("simulate: non-finite start");

  Trajectory out;
  out.seed = seed;
  out.step = dt;
  out.times.reserve(n_steps + 1);
  out.states.reserve(n_steps + 1);
  out.times.push_back(0.0);
  out.states.push_back(p0);

  const double sqrt_dt = std::sqrt(dt);
  Point3 p = p0;
  for (std::size_t i = 0; i < n_steps; ++i) {
    auto n = counter_normal3(seed, traj_id, i);
    n[0] *= sqrt_dt;
    n[1] *= sqrt_dt;
    n[2] *= sqrt_dt;
    p = step_em(params, p, dt, n);
    if (escaped(p)) {
      out.escaped = true;
      break;
    }
    out.times.push_back(static_cast<double>(i + 1) * dt);
    out.states.push_back(p);
  }
  return out;
}

/// CSV export, header `t,x,y,z`, 17 significant digits.
inline void write_csv(const Trajectory& traj, std::ostream& os) {
  os << "t,x,y,z\n";
  char buf[160];
  for (std::size_t i = 0; i < traj.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", traj.times[i],
                  traj.states[i].x, traj.states[i].y, traj.states[i].z);
    os << buf;
  }
}

}  // namespace stolz

#endif  // STOLZ_SIMULATE_HPP
