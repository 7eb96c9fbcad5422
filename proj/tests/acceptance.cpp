// Acceptance suite: one pass/fail line per criterion, exit code equals
// the number of failed criteria. Every tolerance is pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "stolz/bracket.hpp"
#include "stolz/certify.hpp"
#include "stolz/generator.hpp"
#include "stolz/lyapunov_recurrence.hpp"
#include "stolz/lyapunov_transience.hpp"
#include "stolz/mc.hpp"
#include "stolz/registry.hpp"
#include "stolz/smoothness.hpp"
#include "stolz/stats.hpp"

using namespace stolz;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(int criterion, bool pass, const std::string& what,
            const std::string& detail, double secs) {
  if (!pass) ++g_failures;
  std::printf("[%s] criterion %2d: %s  --  %s  (%.2f s)\n",
              pass ? "PASS" : "FAIL", criterion, what.c_str(), detail.c_str(),
              secs);
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------- 1
void criterion_1_generator_oracle() {
  Timer tm;
  double worst_closed = 0.0, worst_fd = 0.0;
  QuasiSequence pseq(2029);
  for (int set = 0; set < 5; ++set) {
    const auto u = pseq.next();
    const ModelParams p(0.5 + 19.5 * u[0], 30.0 * u[1], -2.0 + 4.0 * u[2],
                        2.0 * u[3] + 0.01, 2.0 * u[4], 1.0);
    const ScalarField H = field_H(p);
    QuasiSequence seq(55 + set);
    for (int i = 0; i < 1000; ++i) {
      const auto v = seq.next();
      const Point3 q{-50.0 + 100.0 * v[0], -50.0 + 100.0 * v[1],
                     -50.0 + 100.0 * v[2]};
      const double ad = apply_generator(p, H, q);
      const double cf = lh_closed(p, q);
      worst_closed = std::max(
          worst_closed, std::abs(ad - cf) / std::max(1.0, std::abs(cf)));
      const double fd = apply_generator_fd(
          p, [&](const Point3& r) { return H(r); }, q);
      const double scale = std::max(1.0, generator_scale(p, q, H.jet(q)));
      worst_fd = std::max(worst_fd, std::abs(ad - fd) / scale);
    }
  }
  const bool pass =
      worst_closed < 1e-10 && worst_fd < 1e-6 && tm.seconds() < 1.0;
  report(1, pass, "generator oracle on H (5 parameter sets x 1000 points)",
         "closed-form rel " + fmt(worst_closed) + " < 1e-10, fd rel " +
             fmt(worst_fd) + " < 1e-6",
         tm.seconds());
}

// ---------------------------------------------------------------- 2
void criterion_2_lm_adjudication() {
  Timer tm;
  double worst = 0.0;
  QuasiSequence seq(303);
  for (int i = 0; i < 2000; ++i) {
    const auto u = seq.next();
    const ModelParams p(0.5 + 10.0 * u[3], 5.0 * u[4], -2.0 + 2.5 * u[0],
                        1.3, 0.2, 0.7);
    const Point3 q{-30.0 + 60.0 * u[0], -30.0 + 60.0 * u[1],
                   -30.0 + 60.0 * u[2]};
    const double ad = apply_generator(p, field_M(p), q);
    const double cf = 2.0 * p.sigma * (q.x * q.x - p.beta * q.z) -
                      2.0 * p.gamma1;
    worst = std::max(worst, std::abs(ad - cf) / std::max(1.0, std::abs(cf)));
  }
  const bool pass = worst < 1e-10;
  report(2, pass, "L M = 2 sigma (x^2 - beta z) - 2 gamma1 (the factor-2 form)",
         "max rel " + fmt(worst) + " < 1e-10", tm.seconds());
}

// ---------------------------------------------------------------- 3
RecurrenceCertificate g_cert;  // reused by criterion 10
const ModelParams g_cert_model(10, 0, 0, 1, 0, 0);

void criterion_3_recurrence_certificate() {
  Timer tm;
  RecurrenceSearchOptions opt;
  opt.n_search = 400;
  opt.n_final = 10000;
  opt.ladder_steps = 20;
  g_cert = search_recurrence_params(g_cert_model, opt);
  bool pass = g_cert.found;
  double worst_drift = -1e300, min_v = 1e300;
  for (const auto& r : g_cert.reports) {
    if (r.region == "global:V>=1") {
      min_v = r.worst_margin;
      pass = pass && r.pass;
    } else if (r.region != "K:V") {
      worst_drift = std::max(worst_drift, r.worst_margin);
      pass = pass && r.pass;
    }
  }
  pass = pass && worst_drift <= -0.99 * g_cert.gamma_bar && min_v >= 0.99 &&
         tm.seconds() < 60.0;
  report(3, pass,
         "recurrence certificate search (beta=0, gamma1>0): L V <= -gbar, "
         "V >= 1",
         "worst drift " + fmt(worst_drift) + " <= " +
             fmt(-0.99 * g_cert.gamma_bar) + ", min V " + fmt(min_v) +
             ", d " + fmt(g_cert.excursion_d),
         tm.seconds());
}

// ---------------------------------------------------------------- 4
void criterion_4_gluing_smoothness() {
  Timer tm;
  const ModelParams red(10, 0, 0, 1, 0.5, 0.25);
  RecurrenceParams rp;
  rp.R0 = 4;
  rp.R1 = 2;
  rp.R2 = 4;
  rp.R3 = 2;
  rp.kappa0 = 101;
  rp.kappa1 = 1;
  rp.kappa2 = 1;
  // probe the glued remainder theta1 psi1 + theta2 psi2: V minus its
  // globally smooth quadratic part. V is C^2 iff the remainder is, and
  // the remainder is O(1)-sized, so the fd probe is not drowned in the
  // value roundoff of |V| ~ z^2.
  const ScalarField V("glue_remainder", [red, rp](const JetPoint& q) {
    Jet2 r = jet_const(0.0);
    if (detail::theta1_support(rp, q.x.v, q.y.v, q.z.v))
      r = r + detail::theta1_jet(rp, q) * detail::psi1_jet(rp.kappa1, q);
    if (detail::theta2_support(rp, q.x.v, q.y.v, q.z.v))
      r = r + detail::theta2_jet(rp, q) *
                  detail::psi2_jet(red, rp.kappa2, rp.R1, q);
    return r;
  });

  double worst = 0.0;
  int lines = 0;
  QuasiSequence seq(777);

  // keep a crossing parameter away from every other joint of the field
  auto far_from = [](double v, std::initializer_list<double> joints) {
    for (double j : joints)
      if (std::abs(v - j) < 0.08) return false;
    return true;
  };
  const double pi = 3.14159265358979323846;

  // radial joints x^2 + y^2 = c (theta1 and theta2 first factors)
  for (double c : {rp.R0, 2 * rp.R0, rp.R2, 2 * rp.R2}) {
    int made = 0;
    while (made < 8) {
      const auto u = seq.next();
      const double phi = 0.15 + u[0] * (0.5 * pi - 0.3);
      const double z = (u[2] < 0.5 ? -1 : 1) * rp.R3 * (2.0 + 4.0 * u[1]);
      const double r = std::sqrt(c);
      const Point3 p{r * std::cos(phi), r * std::sin(phi), z};
      if (!far_from(std::abs(p.x) * std::cbrt(std::abs(z)),
                    {0.5 * rp.R1, rp.R1, 2 * rp.R1}))
        continue;
      auto f = line_restriction(V, p, {std::cos(phi), std::sin(phi), 0});
      worst = std::max(worst, c2_mismatch(f, 0.0));
      ++lines;
      ++made;
    }
  }
  // |x||z|^{1/3} = c joints (theta1 chi~ at R1/2, R1; theta2 chi at R1, 2R1)
  for (double c : {0.5 * rp.R1, rp.R1, 2 * rp.R1}) {
    int made = 0;
    while (made < 10) {
      const auto u = seq.next();
      const double z = (u[2] < 0.5 ? -1 : 1) * rp.R3 * (2.0 + 4.0 * u[1]);
      const double x = (u[3] < 0.5 ? -1 : 1) * c / std::cbrt(std::abs(z));
      const double y = (2.0 * u[0] - 1.0) * 1.2;
      const Point3 p{x, y, z};
      if (!far_from(x * x + y * y, {rp.R0, 2 * rp.R0, rp.R2, 2 * rp.R2}))
        continue;
      auto f = line_restriction(V, p, {1, 0, 0});
      worst = std::max(worst, c2_mismatch(f, 0.0));
      ++lines;
      ++made;
    }
  }
  // |z| = c joints (the shared chi~ factor)
  for (double c : {0.5 * rp.R3, rp.R3}) {
    int made = 0;
    while (made < 7) {
      const auto u = seq.next();
      const double x = (u[3] < 0.5 ? -1 : 1) * (0.4 + 1.0 * u[0]);
      const double y = (2.0 * u[1] - 1.0) * 1.2;
      const double z = (u[2] < 0.5 ? -1 : 1) * c;
      const Point3 p{x, y, z};
      if (!far_from(std::abs(x) * std::cbrt(c),
                    {0.5 * rp.R1, rp.R1, 2 * rp.R1}))
        continue;
      if (!far_from(x * x + y * y, {rp.R0, 2 * rp.R0, rp.R2, 2 * rp.R2}))
        continue;
      auto f = line_restriction(V, p, {0, 0, z > 0 ? 1.0 : -1.0});
      worst = std::max(worst, c2_mismatch(f, 0.0));
      ++lines;
      ++made;
    }
  }

  // V1 branch joints zeta = 0 and zeta = B, crossed at unit zeta speed
  const ModelParams neg(10, 28, -0.5, 1, 1, 1);
  const TransienceParams tp = solve_transience_constants(neg);
  const ScalarField V1 = field_V1(neg, tp);
  const double dz = 1.0 / (2.0 * neg.sigma * tp.lambda);
  for (double zeta_j : {0.0, tp.B}) {
    int made = 0;
    while (made < 14) {
      const auto u = seq.next();
      const double x = -3.0 + 6.0 * u[0];
      const double y = -3.0 + 6.0 * u[1];
      const double zj =
          (x * x + tp.A + zeta_j / tp.lambda) / (2.0 * neg.sigma);
      auto f = line_restriction(V1, {x, y, zj}, {0, 0, dz});
      worst = std::max(worst, c2_mismatch(f, 0.0));
      ++lines;
      ++made;
    }
  }

  const bool pass = worst < 1e-5 && lines >= 100 && tm.seconds() < 10.0;
  report(4, pass, "C^2 gluing of V and V1 across all branch boundaries",
         std::to_string(lines) + " lines, worst one-sided d2 mismatch " +
             fmt(worst) + " < 1e-5",
         tm.seconds());
}

// ---------------------------------------------------------------- 5
void criterion_5_transience_certificate() {
  Timer tm;
  const ModelParams mp(10, 28, -0.5, 1, 1, 1);
  TransienceParams tp = solve_transience_constants(mp);
  tp.K = estimate_log_energy_drift_bound(mp, tp.kappa0, 9090);
  tp.validate();

  // Psi branch mismatch at B: value, first, second derivative
  const auto left = transience_profile_d012(tp.B);
  const double u = tp.B + tp.c1;
  const double L = std::log(u);
  const double r0 = tp.c0 * std::log(L) + tp.c2;
  const double r1 = tp.c0 / (u * L);
  const double r2 = -tp.c0 * (1.0 + L) / (u * L * u * L);
  double mismatch = 0.0;
  mismatch = std::max(mismatch,
                      std::abs(r0 - left[0]) / std::max(1.0, std::abs(left[0])));
  mismatch = std::max(mismatch,
                      std::abs(r1 - left[1]) / std::max(1.0, std::abs(left[1])));
  mismatch = std::max(mismatch,
                      std::abs(r2 - left[2]) / std::max(1.0, std::abs(left[2])));

  WonhamOptions opt;  // ladder 20, 1000 directions, 2000 per shell
  const auto rep = check_wonham_hypotheses(mp, tp, opt);

  const bool pass =
      mismatch < 1e-8 && rep.pass && tm.seconds() < 60.0;
  report(5, pass,
         "transience certificate (beta<0): C^2 Psi and hypotheses (p1)-(p4)",
         "Psi mismatch " + fmt(mismatch) + " < 1e-8; p1-p4 " +
             (rep.p1 ? "1" : "0") + (rep.p2 ? "1" : "0") +
             (rep.p3 ? "1" : "0") + (rep.p4 ? "1" : "0") + "; L V1 min " +
             fmt(rep.lv1_lower.worst_margin) + ", L V2 max " +
             fmt(rep.lv2_upper.worst_margin),
         tm.seconds());
}

// ---------------------------------------------------------------- 6
void criterion_6_bracket_regressions() {
  Timer tm;
  bool pass = true;
  std::string detail;

  {
    const ModelParams mp(10, 28, 0, 1.0, 0.5, 0.25);
    const BracketModel bm = bracket_model(mp);
    const PolyVectorField F = drift_field(bm);
    const PolyVectorField G1p = lie_bracket(noise_field(0), F);

    // [G1, F] = sqrt(2g1)(-sigma d_x + (rho - z) d_y + y d_z)
    PolyVectorField e1;
    e1.comp[0] = poly_const(coef_mul(coef_atom(0), coef_rational(-bm.sigma)));
    e1.comp[1] = poly_add(
        poly_const(coef_mul(coef_atom(0), coef_rational(bm.rho))),
        poly_scale(poly_var(2), coef_mul(coef_atom(0), coef_rational(-1))));
    e1.comp[2] = poly_scale(poly_var(1), coef_atom(0));
    pass = pass && (G1p == e1);

    // [G2, G1'] = sqrt(2g1) sqrt(2g2) d_z (a positive multiple of d_z)
    PolyVectorField e2;
    e2.comp[2] = poly_const(coef_mul(coef_atom(0), coef_atom(1)));
    pass = pass && (lie_bracket(noise_field(1), G1p) == e2);

    // [G3, G1'] = -sqrt(2g1) sqrt(2g3) d_y
    PolyVectorField e3;
    e3.comp[1] = poly_const(
        coef_mul(coef_rational(-1), coef_mul(coef_atom(0), coef_atom(2))));
    pass = pass && (lie_bracket(noise_field(2), G1p) == e3);
  }

  bool span12 = false, span13 = false;
  {
    const BracketModel bm = bracket_model(ModelParams(10, 28, 0, 1, 0.5, 0));
    span12 =
        spanning_test(build_hierarchy(drift_field(bm), active_noise_fields(bm), 3))
            .spans;
  }
  {
    const BracketModel bm = bracket_model(ModelParams(10, 28, 0, 1, 0, 0.25));
    span13 =
        spanning_test(build_hierarchy(drift_field(bm), active_noise_fields(bm), 3))
            .spans;
  }
  pass = pass && span12 && span13;
  report(6, pass,
         "bracket regressions exact; spanning for (g1,g2>0) and (g1,g3>0)",
         std::string("chain fields exact, spans ") + (span12 ? "1" : "0") +
             (span13 ? "1" : "0") +
             " (constants are the exact atom products)",
         tm.seconds());
}

// ---------------------------------------------------------------- 7
void criterion_7_stationary_product_law() {
  Timer tm;
  const ModelParams mp(10, 28, 0, 1, 0, 0);
  // effective samples: T_sample / (2 tau) with tau = 1/sigma for the
  // x-OU factor; T = 2e4 gives 1e5
  const auto xs =
      stationary_samples(mp, {5, 0, 28}, 2e-3, 4000.0, 20000.0, 4242, 10);
  bool frozen = true;
  for (double y : xs[1]) frozen = frozen && (y == 0.0);
  for (double z : xs[2]) frozen = frozen && (z == 28.0);
  const double ks = ks_distance_to_normal(xs[0], 0.0, mp.gamma1 / mp.sigma);
  const bool pass = frozen && ks < 0.02 && tm.seconds() < 30.0;
  report(7, pass,
         "stationary product law: x ~ N(0, gamma1/sigma), y and z frozen",
         "KS " + fmt(ks) + " < 0.02 on " + std::to_string(xs[0].size()) +
             " stored samples (1e5 effective); y,z bitwise constant: " +
             (frozen ? "yes" : "no"),
         tm.seconds());
}

// ---------------------------------------------------------------- 8
void criterion_8_degenerate_noise_diagnostic() {
  Timer tm;
  const ModelParams mp(10, 28, 0, 0, 0, 1);
  const auto d = nonstationarity_drift_diagnostic(mp, {0, 0, 0}, 0.01, 10.0,
                                                  1000, 2718, 100, 4);
  const auto fz = fit_line(d.times, d.mean_z2);
  const auto fM = fit_line(d.times, d.mean_M);
  const double target = 2.0 * mp.gamma3;
  const bool slope_ok = std::abs(fz.slope - target) <= 0.1 * target;
  // non-decreasing mean of M: slope not significantly negative
  const bool m_ok = fM.slope >= -3.0 * fM.slope_se;
  const bool pass = slope_ok && m_ok && tm.seconds() < 30.0;
  report(8, pass,
         "degenerate-noise diagnostic (g1=0, g3=1): z^2 grows at 2 g3",
         "z2 slope " + fmt(fz.slope) + " vs " + fmt(target) +
             " (10%), mean-M slope " + fmt(fM.slope) + " +- " +
             fmt(3.0 * fM.slope_se),
         tm.seconds());
}

// ---------------------------------------------------------------- 9
void criterion_9_transience_proxy() {
  Timer tm;
  const ModelParams mp(10, 28, -0.5, 1, 0, 0);
  std::vector<double> survival;
  for (double z0 : {1e2, 1e3, 1e4}) {
    const auto st =
        estimate_hitting(mp, {0, 0, z0}, 60.0, 1e-3, 20.0, 1000, 5150, 4);
    survival.push_back(st.survival_fraction);
  }
  const bool mono =
      survival[0] <= survival[1] && survival[1] <= survival[2];
  const bool pass = mono && tm.seconds() < 120.0;
  report(9, pass,
         "transience proxy (beta=-0.5): survival nondecreasing in z0",
         "survival(1e2,1e3,1e4) = " + fmt(survival[0]) + ", " +
             fmt(survival[1]) + ", " + fmt(survival[2]),
         tm.seconds());
}

// ---------------------------------------------------------------- 10
void criterion_10_return_time_bound() {
  Timer tm;
  if (!g_cert.found) {
    report(10, false, "return-time bound: E xi_K <= V(X)/c",
           "skipped: no certificate from criterion 3", tm.seconds());
    return;
  }
  const RecurrenceParams rp = g_cert.rp;
  const double c = g_cert.gamma_bar;  // the sampled-verified drift rate
  const ModelParams red(g_cert_model.sigma, 0, 0, g_cert_model.gamma1,
                        g_cert_model.gamma2, g_cert_model.gamma3);
  const ScalarField V = field_V(red, rp);
  auto inK = [rp](const Point3& p) { return in_region_K(rp, p); };

  const long n_traj = 100;
  const double buffer = 1.0 + 3.0 / std::sqrt(static_cast<double>(n_traj));
  bool pass = true;
  double worst_ratio = 0.0;
  QuasiSequence seq(606);
  for (int s = 0; s < 20; ++s) {
    const auto u = seq.next();
    const double r = std::sqrt(rp.R0 * (1.1 + 2.9 * u[0]));
    const double phi = 2.0 * 3.14159265358979323846 * u[1];
    const Point3 start{r * std::cos(phi), r * std::sin(phi),
                       -10.0 + 20.0 * u[2]};
    const auto st = estimate_hitting_set(red, start, inK, 2e-4, 20.0, n_traj,
                                         9000 + s, 4);
    const double bound = V(start) / c * buffer;
    worst_ratio = std::max(worst_ratio, st.censored_mean / bound);
    pass = pass && st.censored_mean <= bound;
  }
  pass = pass && tm.seconds() < 120.0;
  report(10, pass,
         "return-time bound: censored mean xi_K <= V(X)/c (1 + 3/sqrt(n))",
         "20 starts x 100 trajectories, worst mean/bound ratio " +
             fmt(worst_ratio),
         tm.seconds());
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_1_generator_oracle();
  criterion_2_lm_adjudication();
  criterion_3_recurrence_certificate();
  criterion_4_gluing_smoothness();
  criterion_5_transience_certificate();
  criterion_6_bracket_regressions();
  criterion_7_stationary_product_law();
  criterion_8_degenerate_noise_diagnostic();
  criterion_9_transience_proxy();
  criterion_10_return_time_bound();
  std::printf("%d of 10 criteria passed\n", 10 - g_failures);
  return g_failures;
}
