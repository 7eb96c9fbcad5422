#include <catch2/catch_amalgamated.hpp>

#include "stolz/model.hpp"

using namespace stolz;

TEST_CASE("parameter invariants are enforced at construction") {
  CHECK_NOTHROW(ModelParams(10, 28, 8.0 / 3.0, 1, 0, 0));
  CHECK_NOTHROW(ModelParams(1, 0, -1, 0, 0, 0.5));
  CHECK_THROWS_AS(ModelParams(0, 28, 1, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(-1, 28, 1, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(10, -1, 1, 1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(10, 28, 1, -1, 1, 1), std::invalid_argument);
  // all-zero noise rejected
  CHECK_THROWS_AS(ModelParams(10, 28, 1, 0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(10, 28, std::nan(""), 1, 0, 0),
                  std::invalid_argument);
}

TEST_CASE("drift evaluates the vector field") {
  const ModelParams p(10, 28, 8.0 / 3.0, 1, 0, 0);

  SECTION("classical parameters at (1,1,1)") {
    const Point3 f = drift(p, {1, 1, 1});
    CHECK(f.x == 0.0);
    CHECK(f.y == 26.0);
    CHECK(f.z == Catch::Approx(-5.0 / 3.0).epsilon(1e-15));
  }

  SECTION("the origin is a zero of the drift for any parameters") {
    const Point3 f = drift(p, {0, 0, 0});
    CHECK((f.x == 0.0 && f.y == 0.0 && f.z == 0.0));
  }

  SECTION("with beta = 0 every point of the z-axis is an equilibrium") {
    const ModelParams q(10, 28, 0, 1, 0, 0);
    for (double z0 : {-17.0, 0.0, 3.5, 1e6}) {
      const Point3 f = drift(q, {0, 0, z0});
      CHECK((f.x == 0.0 && f.y == 0.0 && f.z == 0.0));
    }
  }
}

TEST_CASE("diffusion row is the constant sqrt(2 gamma) triple") {
  const Point3 g1 = diffusion_row(ModelParams(10, 28, 1, 1, 0, 0));
  CHECK(g1.x == Catch::Approx(std::sqrt(2.0)));
  CHECK(g1.y == 0.0);
  CHECK(g1.z == 0.0);

  const Point3 gh = diffusion_row(ModelParams(10, 28, 1, 0.5, 0.5, 0.5));
  CHECK(gh.x == 1.0);
  CHECK(gh.y == 1.0);
  CHECK(gh.z == 1.0);
}
