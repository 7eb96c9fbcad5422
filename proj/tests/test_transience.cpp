#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "stolz/certify.hpp"
#include "stolz/generator.hpp"
#include "stolz/lyapunov_transience.hpp"
#include "stolz/smoothness.hpp"

using namespace stolz;

namespace {
const ModelParams kNeg(10, 28, -0.5, 1, 1, 1);
}

TEST_CASE("profile derivatives at 2 pi / 3") {
  const auto d = transience_profile_d012(kTwoPiOverThree);
  CHECK(d[1] == Catch::Approx(1.5 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(d[2] == Catch::Approx(0.0).margin(1e-12));
  // f increasing on (0, pi), convex then concave around 2 pi/3
  CHECK(transience_profile_d012(1.0)[2] > 0.0);
  CHECK(transience_profile_d012(2.5)[2] < 0.0);
}

TEST_CASE("solved constants define a C^2 Psi") {
  const TransienceParams tp = solve_transience_constants(kNeg);

  CHECK(tp.A == Catch::Approx((2.0 * kNeg.gamma1 + 2.0) / 0.5));
  CHECK(tp.m == Catch::Approx(200.0));
  CHECK(tp.B > kTwoPiOverThree);
  CHECK(tp.B < 3.141592653589793);
  CHECK(tp.c0 > 0.0);
  CHECK(std::isfinite(tp.c2));
  CHECK(tp.B + tp.c1 > 1.0);
  CHECK(tp.lambda > 0.0);
  CHECK(tp.lambda < 1.0);

  SECTION("profile condition f' >= -m f'' holds on (2pi/3, B)") {
    for (int i = 1; i <= 1000; ++i) {
      const double z =
          kTwoPiOverThree + (tp.B - kTwoPiOverThree) * i / 1000.0;
      const auto d = transience_profile_d012(z);
      CHECK(d[1] >= -tp.m * d[2] - 1e-12);
    }
  }

  SECTION("branch match at B: value, first, second derivative") {
    const auto left = transience_profile_d012(tp.B);
    const double u = tp.B + tp.c1;
    const double L = std::log(u);
    const double right0 = tp.c0 * std::log(L) + tp.c2;
    const double right1 = tp.c0 / (u * L);
    const double right2 = -tp.c0 * (1.0 + L) / (u * L * u * L);
    CHECK(std::abs(right0 - left[0]) / std::max(1.0, std::abs(left[0])) < 1e-8);
    CHECK(std::abs(right1 - left[1]) / std::max(1.0, std::abs(left[1])) < 1e-8);
    CHECK(std::abs(right2 - left[2]) / std::max(1.0, std::abs(left[2])) < 1e-8);
  }

  SECTION("lambda inequality with safety factor") {
    const double t = tp.B + tp.c1;
    CHECK(tp.lambda * tp.m * (1.0 + std::log(t)) / (t * std::log(t)) <= 1.0);
  }

  CHECK_THROWS_AS(solve_transience_constants(ModelParams(10, 28, 0, 1, 1, 1)),
                  std::invalid_argument);
}

TEST_CASE("V1 branch structure") {
  const TransienceParams tp = solve_transience_constants(kNeg);
  const ScalarField V1 = field_V1(kNeg, tp);

  // zeta <= 0 <=> 2 sigma z - x^2 <= A: V1 vanishes there
  CHECK(V1({0, 0, 0}) == 0.0);
  CHECK(V1({5, 3, -10}) == 0.0);
  CHECK(V1({0, 0, tp.A / (2.0 * kNeg.sigma)}) == 0.0);

  // double-log growth along (0, 0, z)
  double prev = 0.0;
  for (int k = 0; k < 12; ++k) {
    const double z = 100.0 * std::pow(4.0, k);
    const double v = V1({0, 0, z});
    CHECK(v > prev);
    prev = v;
  }
  // growth rate matches c0 lnln asymptotics
  const double z1 = 1e6, z2 = 1e12;
  const double g = V1({0, 0, z2}) - V1({0, 0, z1});
  const double expect =
      tp.c0 * (std::log(std::log(tp.lambda * (2 * kNeg.sigma * z2 - tp.A) + tp.c1)) -
               std::log(std::log(tp.lambda * (2 * kNeg.sigma * z1 - tp.A) + tp.c1)));
  CHECK(g == Catch::Approx(expect).epsilon(1e-9));
}

TEST_CASE("V1 is C^2 across both branch joints") {
  const TransienceParams tp = solve_transience_constants(kNeg);
  const ScalarField V1 = field_V1(kNeg, tp);
  // crossing lines in z through zeta = 0 and zeta = B at fixed x; the
  // direction is scaled so the branch coordinate zeta moves at unit
  // speed along the line
  const double dz = 1.0 / (2.0 * kNeg.sigma * tp.lambda);
  for (double x : {0.0, 1.0, -2.5}) {
    const double z0 = (x * x + tp.A) / (2.0 * kNeg.sigma);
    const double zB =
        (x * x + tp.A + tp.B / tp.lambda) / (2.0 * kNeg.sigma);
    for (double zj : {z0, zB}) {
      auto f = line_restriction(V1, {x, 0.4, zj}, {0, 0, dz});
      CHECK(c2_mismatch(f, 0.0) < 1e-5);
    }
  }
}

TEST_CASE("closed-form L V1 agrees with the jet path") {
  const TransienceParams tp = solve_transience_constants(kNeg);
  const ScalarField V1 = field_V1(kNeg, tp);
  QuasiSequence seq(7331);
  for (int i = 0; i < 300; ++i) {
    const auto u = seq.next();
    const Point3 p{-10 + 20 * u[0], -10 + 20 * u[1], -5 + 200 * u[2]};
    const double a = apply_generator(kNeg, V1, p);
    const double b = transience_drift_v1(kNeg, tp, p);
    CHECK(std::abs(a - b) <= 1e-7 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("L V1 >= 0 everywhere (sampled), as the construction guarantees") {
  const TransienceParams tp = solve_transience_constants(kNeg);
  QuasiSequence seq(999);
  for (int i = 0; i < 5000; ++i) {
    const auto u = seq.next();
    const Point3 p{-30 + 60 * u[0], -30 + 60 * u[1],
                   -100 + 100 * std::exp(8.0 * u[2])};
    CHECK(transience_drift_v1(kNeg, tp, p) >= -1e-9);
  }
}

TEST_CASE("V2 and the bound on L ln(H + kappa0)") {
  const double kappa0 = (kNeg.sigma + kNeg.rho) * (kNeg.sigma + kNeg.rho) +
                        std::exp(1.0);
  const double K =
      estimate_log_energy_drift_bound(kNeg, kappa0, 11, 0.0, 1000, 16);
  CHECK(K > 0.0);
  CHECK(K >= 2.0 * std::abs(kNeg.beta));

  const ScalarField V2 = field_V2(kNeg, K, kappa0);
  // strictly positive everywhere (H + kappa0 >= e)
  QuasiSequence seq(12);
  for (int i = 0; i < 3000; ++i) {
    const auto u = seq.next();
    const Point3 p{-80 + 160 * u[0], -80 + 160 * u[1], -80 + 160 * u[2]};
    CHECK(V2(p) > 0.0);
  }
  CHECK(V2({0, 0, kNeg.sigma + kNeg.rho}) ==
        Catch::Approx(1.0 / K));  // ln(e)/K at the vertex

  // closed form matches jets; the bound holds on fresh samples of the
  // claimed region |X| >= R
  const double R = 2.0 * (kNeg.sigma + kNeg.rho) + 10.0;
  QuasiSequence seq2(13);
  int n_checked = 0;
  for (int i = 0; i < 6000; ++i) {
    const auto u = seq2.next();
    const Point3 p{-300 + 600 * u[0], -300 + 600 * u[1],
                   -2000 + 4000 * u[2]};
    const double closed = log_energy_drift(kNeg, kappa0, p);
    const double jets = apply_generator(kNeg, V2, p) * K;
    CHECK(std::abs(closed - jets) <= 1e-7 * std::max(1.0, std::abs(closed)));
    if (p.norm() >= R) {
      CHECK(closed / K <= 1.0);
      ++n_checked;
    }
  }
  CHECK(n_checked > 3000);
}
