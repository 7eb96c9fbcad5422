#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "stolz/generator.hpp"
#include "stolz/lyapunov_recurrence.hpp"
#include "stolz/rng.hpp"
#include "stolz/sampler.hpp"
#include "stolz/smoothness.hpp"

using namespace stolz;

namespace {

const ModelParams kRed(10, 0, 0, 1, 0.5, 0.25);  // reduced-system params

RecurrenceParams desk_params() {
  RecurrenceParams rp;
  rp.R0 = 4;
  rp.R1 = 2;
  rp.R2 = 4;
  rp.R3 = 2;
  rp.kappa0 = 101;  // sigma^2 + 1
  rp.kappa1 = 1;
  rp.kappa2 = 1;
  return rp;
}

// jet vs finite-difference agreement at a point, relative 1e-5; the
// second derivative uses a Richardson stencil so its truncation does
// not eat the tolerance
void check_jet_fd(const ScalarField& f, const Point3& p) {
  const Jet2 j = f.jet(p);
  REQUIRE(j.finite());
  auto value_at = [&](int i, double h) {
    Point3 r = p;
    (i == 0 ? r.x : i == 1 ? r.y : r.z) += h;
    return f(r);
  };
  const double coords[3] = {p.x, p.y, p.z};
  for (int i = 0; i < 3; ++i) {
    const double span = std::max(1.0, std::abs(coords[i]));
    const double h1 = 1e-6 * span;
    const double h2 = 1e-3 * span;
    const double d1 = (value_at(i, h1) - value_at(i, -h1)) / (2 * h1);
    const double f0 = f(p);
    auto second = [&](double h) {
      return (value_at(i, h) - 2 * f0 + value_at(i, -h)) / (h * h);
    };
    const double d2 = (4.0 * second(0.5 * h2) - second(h2)) / 3.0;
    CHECK(std::abs(d1 - j.g[i]) / std::max(1.0, std::abs(j.g[i])) < 1e-5);
    CHECK(std::abs(d2 - j.h[i]) / std::max(1.0, std::abs(j.h[i])) < 1e-5);
  }
}

}  // namespace

TEST_CASE("H and H~ special values") {
  const ModelParams p(10, 28, 0, 1, 0, 0);
  const ScalarField H = field_H(p);
  CHECK(H({0, 0, 0}) == 0.0);
  const double sr = p.sigma + p.rho;
  CHECK(H({0, 0, sr}) == Catch::Approx(-sr * sr));

  // H~ with kappa0 = sigma^2 completes the square: >= 0, zero at (0,0,sigma)
  const ScalarField Ht = field_H_tilde(p, p.sigma * p.sigma);
  CHECK(Ht({0, 0, p.sigma}) == Catch::Approx(0.0).margin(1e-12));
  QuasiSequence seq(5);
  double vmin = 1e300;
  for (int i = 0; i < 2000; ++i) {
    const auto u = seq.next();
    vmin = std::min(vmin, Ht({-40 + 80 * u[0], -40 + 80 * u[1],
                              -40 + 80 * u[2]}));
  }
  CHECK(vmin >= 0.0);
}

TEST_CASE("psi1 values and region bound") {
  const ScalarField p1 = field_psi1(1.0);
  CHECK(p1({1, 1, 1}) == Catch::Approx(1.0));
  CHECK(p1({2, 0, 5}) == 0.0);
  CHECK(p1({-3, 7, 2}) == Catch::Approx(7.0 / -6.0));

  // On R1 with R0 = R1 = 1: |psi1| <= kappa1 R0^{1/2} / (R1 |z|^{2/3})
  RecurrenceParams rp;
  rp.R0 = 1;
  rp.R1 = 1;
  rp.R2 = 1;
  rp.R3 = 1;
  int n = 0;
  for (const auto& shell : recurrence_region_shells(rp, 1, 8)) {
    for (const Point3& q : sample_region(shell, 15, 4242)) {
      const double bound = std::pow(std::abs(q.z), -2.0 / 3.0);
      CHECK(std::abs(p1(q)) <= bound * (1 + 1e-12));
      ++n;
    }
  }
  REQUIRE(n >= 100);
}

TEST_CASE("psi2 values, sign and curvature identity") {
  const ModelParams p(10, 0, 0, 0.5, 0, 0);
  const double kappa2 = 3.0, R1 = 2.0;
  const ScalarField p2 = field_psi2(p, kappa2, R1);

  // zero exactly on |x| = 2 R1, |z| = 1
  CHECK(p2({2 * R1, 0, 1}) == Catch::Approx(0.0).margin(1e-12));

  // gamma1 * d_x^2 psi2 = -kappa2 at any in-domain point
  for (const Point3 q : {Point3{0.3, 5, 2}, Point3{-1, 0, -9}, Point3{2, 1, 30}}) {
    const Jet2 j = p2.jet(q);
    CHECK(p.gamma1 * j.h[0] == Catch::Approx(-kappa2).epsilon(1e-12));
  }

  // on {|x||z|^{1/3} <= 2 R1}: psi2 >= 0 and |psi2| <= (2/gamma1) kappa2 R1^2 / |z|^{2/3}
  QuasiSequence seq(88);
  for (int i = 0; i < 500; ++i) {
    const auto u = seq.next();
    const double z = (u[2] < 0.5 ? -1 : 1) * std::exp(std::log(0.5) + 10.0 * u[3]);
    const double ax = 2.0 * R1 / std::cbrt(std::abs(z)) * u[0];
    const Point3 q{(u[4] < 0.5 ? -1 : 1) * ax, -3 + 6 * u[1], z};
    const double v = p2(q);
    CHECK(v >= -1e-12);
    CHECK(std::abs(v) <=
          (2.0 / p.gamma1) * kappa2 * R1 * R1 *
              std::pow(std::abs(z), -2.0 / 3.0) * (1 + 1e-12));
  }

  CHECK_THROWS_AS(field_psi2(ModelParams(10, 0, 0, 0, 1, 0), 1, 1),
                  std::invalid_argument);
}

TEST_CASE("cutoff products theta1, theta2") {
  RecurrenceParams rp = desk_params();
  const ScalarField t1 = field_theta1(rp);
  const ScalarField t2 = field_theta2(rp);

  // deep inside R1: all three factors on their plateaus
  // x^2+y^2 = R0/4, |x||z|^{1/3} >= 2 R1, |z| >= 2 R3
  const Point3 deep{1.0, 0.0, 64.0};  // |x||z|^{1/3} = 4 = 2 R1, |z| = 32 R3
  CHECK(t1(deep) == 1.0);

  // |z| <= R3/2 kills both
  for (const Point3 q : {Point3{1, 1, 0.5}, Point3{3, 0, -1.0}, Point3{0, 0, 0}}) {
    CHECK(t1(q) == 0.0);
    CHECK(t2(q) == 0.0);
  }

  // overlap: on R1 <= |x||z|^{1/3} <= 2 R1 both cutoffs can be positive
  const Point3 mid{1.5 / std::cbrt(64.0), 0.0, 64.0};  // |x||z|^{1/3} = 1.5
  CHECK(t1(mid) > 0.0);
  CHECK(t2(mid) > 0.0);

  // range in [0,1] everywhere, including points where |.| kinks sit
  QuasiSequence seq(19);
  for (int i = 0; i < 3000; ++i) {
    const auto u = seq.next();
    const Point3 q{-6 + 12 * u[0], -6 + 12 * u[1], -40 + 80 * u[2]};
    for (const ScalarField* f : {&t1, &t2}) {
      const Jet2 j = f->jet(q);
      REQUIRE(j.finite());
      CHECK(j.v >= 0.0);
      CHECK(j.v <= 1.0);
    }
  }
  CHECK(t1.jet({0, 1, 8}).finite());  // x = 0: kink excised by the plateau
}

TEST_CASE("composite V: values, positivity, asymptotics") {
  RecurrenceParams rp = desk_params();
  const ScalarField V = field_V(kRed, rp);

  // cutoffs vanish at the origin: V = kappa0
  CHECK(V({0, 0, 0}) == Catch::Approx(rp.kappa0));

  // V / H~ -> 1 along the z-axis ladder
  const ScalarField Ht = field_H_tilde(kRed, rp.kappa0);
  double prev_gap = 1e300;
  for (int k = 4; k <= 24; k += 4) {
    const Point3 q{0, 0, rp.R3 * std::pow(2.0, k)};
    const double ratio = V(q) / Ht(q);
    const double gap = std::abs(ratio - 1.0);
    CHECK(gap < prev_gap + 1e-18);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-10);

  // global sampled positivity with this kappa0
  QuasiSequence seq(23);
  double vmin = 1e300;
  for (int i = 0; i < 5000; ++i) {
    const auto u = seq.next();
    vmin = std::min(vmin, V({-20 + 40 * u[0], -20 + 40 * u[1],
                             -300 + 600 * u[2]}));
  }
  CHECK(vmin > 0.0);
}

TEST_CASE("every field agrees with finite differences at random in-domain points") {
  RecurrenceParams rp = desk_params();
  const ScalarField fields[] = {
      field_H(kRed),          field_H_tilde(kRed, rp.kappa0),
      field_M(kRed),          field_theta1(rp),
      field_theta2(rp),       field_V(kRed, rp)};
  QuasiSequence seq(31);
  int n = 0;
  for (int i = 0; i < 200; ++i) {
    const auto u = seq.next();
    const Point3 q{-10 + 20 * u[0], -10 + 20 * u[1], -30 + 60 * u[2]};
    // keep away from the |.| kink loci of the cutoffs, where one-sided
    // fd stencils straddle a (C^2 but not C^3) joint
    if (std::abs(q.x) < 0.2 || std::abs(q.z) < 0.2) continue;
    for (const ScalarField& f : fields) check_jet_fd(f, q);
    ++n;
  }
  REQUIRE(n > 150);

  // psi fields on their domains
  for (int i = 0; i < 50; ++i) {
    const auto u = seq.next();
    const Point3 q{0.5 + 3 * u[0], -4 + 8 * u[1],
                   (u[3] < 0.5 ? -1 : 1) * (1.0 + 20 * u[2])};
    check_jet_fd(field_psi1(1.7), q);
    check_jet_fd(field_psi2(kRed, 2.3, rp.R1), q);
  }
}

TEST_CASE("region containment: {x^2+y^2 <= R0, |z| >= R3} inside R1 u R2") {
  RecurrenceParams rp = desk_params();
  QuasiSequence seq(47);
  for (int i = 0; i < 20000; ++i) {
    const auto u = seq.next();
    const double r = std::sqrt(rp.R0 * u[0]);
    const double phi = 6.283185307179586 * u[1];
    const double z = (u[3] < 0.5 ? -1 : 1) * rp.R3 * (1.0 + 1000.0 * u[2]);
    const Point3 q{r * std::cos(phi), r * std::sin(phi), z};
    CHECK((in_region_R1(rp, q) || in_region_R2(rp, q)));
  }
}

TEST_CASE("stable generator breakdown equals the jet path at moderate points") {
  RecurrenceParams rp = desk_params();
  rp.kappa1 = 3.0;
  rp.kappa2 = 5.0;
  const ScalarField V = field_V(kRed, rp);
  QuasiSequence seq(61);
  int n = 0;
  for (int i = 0; i < 500; ++i) {
    const auto u = seq.next();
    const Point3 q{-5 + 10 * u[0], -5 + 10 * u[1], -60 + 120 * u[2]};
    if (std::abs(q.x) < 1e-3 || std::abs(q.z) < 1e-3) continue;
    const double direct = apply_generator(kRed, V, q);
    const double stable = recurrence_drift(kRed, rp, q);
    CHECK(std::abs(direct - stable) /
              std::max(1.0, std::abs(stable)) < 1e-8);
    ++n;
  }
  REQUIRE(n > 400);
}

TEST_CASE("C^2 gluing of V across cutoff joints") {
  RecurrenceParams rp = desk_params();
  const ScalarField V = field_V(kRed, rp);
  // cross the |z|/R3 chi~ joints along z at fixed (x, y)
  for (double zj : {0.5 * rp.R3, rp.R3}) {
    auto f = line_restriction(V, {1.2, 0.7, zj}, {0, 0, 1});
    CHECK(c2_mismatch(f, 0.0) < 1e-5);
  }
  // cross the x^2+y^2 joints along x at fixed z
  for (double rj : {rp.R0, 2 * rp.R0}) {
    auto f = line_restriction(V, {std::sqrt(rj), 0.0, 3 * rp.R3}, {1, 0, 0});
    CHECK(c2_mismatch(f, 0.0) < 1e-5);
  }
}
