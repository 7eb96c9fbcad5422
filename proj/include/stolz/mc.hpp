#ifndef STOLZ_MC_HPP
#define STOLZ_MC_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "stolz/model.hpp"
#include "stolz/rng.hpp"
#include "stolz/simulate.hpp"
#include "stolz/stats.hpp"

namespace stolz {

// Monte Carlo estimation of first-passage times and long-run
// statistics. Trajectories are independent streams keyed by
// (seed, traj_id), outcomes land in per-trajectory slots, and all
// reductions run in index order, so pooled results do not depend on the
// worker count.

namespace detail {

inline void parallel_for(long n, int threads,
                         const std::function<void(long)>& body) {
  if (threads <= 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const long chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const long lo = t * chunk;
    const long hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body]() {
      for (long i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

/// First-passage statistics to a target set, censored at the horizon.
struct HittingTimeStats {
  Point3 start;
  double radius = 0.0;  // ball form; 0 when a general set was used
  long n_traj = 0;
  long n_hit = 0;
  long n_escaped = 0;  // overflowed trajectories, counted as non-hits
  double horizon = 0.0;
  std::vector<double> hit_times;  // one entry per hit, in traj order
  std::vector<double> outcomes;   // per traj: t >= 0 hit, -1 censored,
                                  // -2 escaped
  double mean_hit_only = 0.0;     // mean over hits
  double censored_mean = 0.0;     // mean of min(xi, T) over all trajectories
  double survival_fraction = 0.0;  // 1 - n_hit/n_traj
};

/// First entry of the discrete trajectory into `target`; no sub-step
/// interpolation (O(dt) bias, controlled by dt-halving sanity runs).
inline HittingTimeStats estimate_hitting_set(
    const ModelParams& params, const Point3& start,
    const std::function<bool(const Point3&)>& target, double dt, double T,
    long n_traj, std::uint64_t seed, int threads = 1) {
  if (!(dt > 0.0) || !(T > 0.0) || n_traj <= 0)
    throw std::invalid_argument("estimate_hitting: bad dt/T/n_traj");

  const long n_steps = static_cast<long>(std::ceil(T / dt));
  const double sqrt_dt = std::sqrt(dt);

  // slot per trajectory: hit time, or -1 censored, or -2 escaped
  std::vector<double> outcome(n_traj, -1.0);
  detail::parallel_for(n_traj, threads, [&](long id) {
    Point3 p = start;
    if (target(p)) {
      outcome[id] = 0.0;
      return;
    }
    for (long i = 0; i < n_steps; ++i) {
      auto n = counter_normal3(seed, static_cast<std::uint64_t>(id),
                               static_cast<std::uint64_t>(i));
      n[0] *= sqrt_dt;
      n[1] *= sqrt_dt;
      n[2] *= sqrt_dt;
      p = step_em(params, p, dt, n);
      if (escaped(p)) {
        outcome[id] = -2.0;
        return;
      }
      if (target(p)) {
        outcome[id] = static_cast<double>(i + 1) * dt;
        return;
      }
    }
  });

  HittingTimeStats st;
  st.start = start;
  st.n_traj = n_traj;
  st.horizon = T;
  double censored_sum = 0.0, hit_sum = 0.0;
  for (long id = 0; id < n_traj; ++id) {
    const double o = outcome[id];
    if (o >= 0.0) {
      ++st.n_hit;
      st.hit_times.push_back(o);
      hit_sum += o;
      censored_sum += o;
    } else {
      if (o == -2.0) ++st.n_escaped;
      censored_sum += T;
    }
  }
  st.mean_hit_only = st.n_hit > 0 ? hit_sum / st.n_hit : 0.0;
  st.censored_mean = censored_sum / n_traj;
  st.survival_fraction = 1.0 - static_cast<double>(st.n_hit) / n_traj;
  st.outcomes = std::move(outcome);
  return st;
}

/// Ball form: xi_R = inf { t >= 0 : |X_t| <= R }.
inline HittingTimeStats estimate_hitting(const ModelParams& params,
                                         const Point3& start, double R,
                                         double dt, double T, long n_traj,
                                         std::uint64_t seed, int threads = 1) {
  if (!(R > 0.0)) throw std::invalid_argument("estimate_hitting: R <= 0");
  auto st = estimate_hitting_set(
      params, start,
      [R2 = R * R](const Point3& p) { return p.norm_sq() <= R2; }, dt, T,
      n_traj, seed, threads);
  st.radius = R;
  return st;
}

/// Empirical law of the time average along one long trajectory.
struct EmpiricalLaw {
  long n_samples = 0;
  double burn_in_time = 0.0;
  std::array<std::vector<double>, 3> bin_edges;
  std::array<std::vector<long>, 3> counts;
  std::array<double, 3> mean{0, 0, 0};
  std::array<double, 3> var{0, 0, 0};  // population second central moment
};

/// Thinned per-coordinate samples after burn-in. Throws if the
/// trajectory escapes (no stationary estimate is possible then).
inline std::array<std::vector<double>, 3> stationary_samples(
    const ModelParams& params, const Point3& start, double dt, double t_burn,
    double t_sample, std::uint64_t seed, long stride = 1) {
  if (!(t_sample > 0.0) || !(dt > 0.0))
    throw std::invalid_argument("estimate_stationary: bad dt/t_sample");
  if (stride < 1) stride = 1;
  const long n_burn = static_cast<long>(std::ceil(t_burn / dt));
  const long n_total =
      n_burn + static_cast<long>(std::ceil(t_sample / dt));
  const double sqrt_dt = std::sqrt(dt);
  std::array<std::vector<double>, 3> xs;
  Point3 p = start;
  for (long i = 0; i < n_total; ++i) {
    auto n = counter_normal3(seed, 0, static_cast<std::uint64_t>(i));
    n[0] *= sqrt_dt;
    n[1] *= sqrt_dt;
    n[2] *= sqrt_dt;
    p = step_em(params, p, dt, n);
    if (escaped(p))
      throw std::runtime_error(
          "estimate_stationary: trajectory escaped numeric range at t = " +
          std::to_string(static_cast<double>(i + 1) * dt));
    if (i >= n_burn && (i - n_burn) % stride == 0) {
      xs[0].push_back(p.x);
      xs[1].push_back(p.y);
      xs[2].push_back(p.z);
    }
  }
  return xs;
}

/// Histograms and first two moments of the post-burn-in time average.
/// Default burn-in is 20% of t_sample when t_burn < 0.
inline EmpiricalLaw estimate_stationary(const ModelParams& params,
                                        const Point3& start, double dt,
                                        double t_burn, double t_sample,
                                        std::uint64_t seed, int bins = 101,
                                        long stride = 1) {
  if (t_burn < 0.0) t_burn = 0.2 * t_sample;
  const auto xs =
      stationary_samples(params, start, dt, t_burn, t_sample, seed, stride);
  EmpiricalLaw law;
  law.n_samples = static_cast<long>(xs[0].size());
  law.burn_in_time = t_burn;
  for (int c = 0; c < 3; ++c) {
    const auto& v = xs[c];
    double lo = v[0], hi = v[0], m = 0.0;
    for (double x : v) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      m += x;
    }
    m /= v.size();
    double s2 = 0.0;
    for (double x : v) s2 += (x - m) * (x - m);
    law.mean[c] = m;
    law.var[c] = s2 / v.size();
    if (hi <= lo) hi = lo + 1.0;  // degenerate coordinate (point mass)
    law.bin_edges[c].resize(bins + 1);
    law.counts[c].assign(bins, 0);
    const double w = (hi - lo) / bins;
    for (int b = 0; b <= bins; ++b) law.bin_edges[c][b] = lo + b * w;
    for (double x : v) {
      int b = static_cast<int>((x - lo) / w);
      if (b >= bins) b = bins - 1;
      if (b < 0) b = 0;
      ++law.counts[c][b];
    }
  }
  return law;
}

/// Ensemble time series of mean M = 2 sigma z - x^2 (and of z^2), the
/// stationarity contradiction diagnostic for beta = 0, gamma1 = 0:
/// under any stationary law the mean of M would be constant, but the
/// dynamics push it upward at rate 2 sigma E[x^2] (z^2 grows at 2 gamma3
/// when x stays 0).
struct DriftDiagnostic {
  std::vector<double> times;
  std::vector<double> mean_M, se_M;
  std::vector<double> mean_z2, se_z2;
  long n_traj = 0;
};

inline DriftDiagnostic nonstationarity_drift_diagnostic(
    const ModelParams& params, const Point3& start, double dt, double T,
    long n_traj, std::uint64_t seed, int n_records = 100, int threads = 1) {
  if (params.gamma1 != 0.0 || params.beta != 0.0 ||
      params.gamma2 + params.gamma3 <= 0.0)
    throw std::invalid_argument(
        "nonstationarity_drift_diagnostic: requires gamma1 = 0, beta = 0, "
        "gamma2 + gamma3 > 0");
  const long n_steps = static_cast<long>(std::ceil(T / dt));
  const long rec_every = std::max(1L, n_steps / n_records);
  std::vector<long> rec_steps;
  for (long i = rec_every; i <= n_steps; i += rec_every) rec_steps.push_back(i);

  const std::size_t nr = rec_steps.size();
  std::vector<std::vector<double>> M_rows(n_traj), z2_rows(n_traj);
  const double sqrt_dt = std::sqrt(dt);
  detail::parallel_for(n_traj, threads, [&](long id) {
    auto& Mr = M_rows[id];
    auto& zr = z2_rows[id];
    Mr.resize(nr);
    zr.resize(nr);
    Point3 p = start;
    std::size_t r = 0;
    for (long i = 0; i < n_steps && r < nr; ++i) {
      auto n = counter_normal3(seed, static_cast<std::uint64_t>(id),
                               static_cast<std::uint64_t>(i));
      n[0] *= sqrt_dt;
      n[1] *= sqrt_dt;
      n[2] *= sqrt_dt;
      p = step_em(params, p, dt, n);
      if (escaped(p)) break;
      if (i + 1 == rec_steps[r]) {
        Mr[r] = 2.0 * params.sigma * p.z - p.x * p.x;
        zr[r] = p.z * p.z;
        ++r;
      }
    }
    Mr.resize(r);
    zr.resize(r);
  });

  DriftDiagnostic d;
  d.n_traj = n_traj;
  for (std::size_t r = 0; r < nr; ++r) {
    std::vector<double> Ms, zs;
    for (long id = 0; id < n_traj; ++id) {
      if (M_rows[id].size() > r) {
        Ms.push_back(M_rows[id][r]);
        zs.push_back(z2_rows[id][r]);
      }
    }
    if (Ms.empty()) break;
    const auto [mm, sm] = mean_se(Ms);
    const auto [mz, sz] = mean_se(zs);
    d.times.push_back(static_cast<double>(rec_steps[r]) * dt);
    d.mean_M.push_back(mm);
    d.se_M.push_back(sm);
    d.mean_z2.push_back(mz);
    d.se_z2.push_back(sz);
  }
  return d;
}

}  // namespace stolz

#endif  // STOLZ_MC_HPP
