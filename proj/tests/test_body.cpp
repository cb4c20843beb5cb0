#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "oracles.hpp"
#include "sectionlab/body.hpp"
#include "sectionlab/constants.hpp"
#include "sectionlab/errors.hpp"
#include "sectionlab/metrics.hpp"
#include "sectionlab/quadrature.hpp"
#include "sectionlab/spec_io.hpp"

using namespace sectionlab;

TEST_CASE("shifted ball radial matches the ray-march oracle") {
  auto spec = ConvexBodySpec::ball(Vec{0.2, -0.1, 0.05}, 1.1);
  StarBody K = StarBody::from_spec(spec);
  auto inside = [&](const Vec& x) { return spec_contains(spec, x, 1e-12); };
  SphereQuadrature grid = sphere_grid(3, 12);
  for (const auto& xi : grid.nodes) {
    double expect =
        oracles::ray_march_radial(inside, Vec{0, 0, 0}, xi.coords(), 2.0);
    CHECK(K.radial(xi) == doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("rotated ellipsoid radial matches the ray-march oracle") {
  double c = std::cos(0.4), s = std::sin(0.4);
  std::vector<Vec> rot{{c, -s}, {s, c}};
  auto spec = ConvexBodySpec::ellipsoid(Vec{0.1, 0.0}, {1.4, 0.8}, rot);
  StarBody K = StarBody::from_spec(spec);
  auto inside = [&](const Vec& x) { return spec_contains(spec, x, 1e-12); };
  SphereQuadrature grid = sphere_grid(2, 32);
  for (const auto& xi : grid.nodes) {
    double expect =
        oracles::ray_march_radial(inside, Vec{0, 0}, xi.coords(), 3.0);
    CHECK(K.radial(xi) == doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("cube polytope has the expected vertices and support") {
  auto spec = ConvexBodySpec::cube(3, 1.0);
  const auto& poly = std::get<Polytope>(spec.shape);
  auto verts = polytope_vertices(poly, 3);
  CHECK(verts.size() == 8);
  StarBody K = StarBody::from_spec(spec);
  CHECK(K.support(Direction::axis(3, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  Direction diag(Vec{1.0, 1.0, 1.0});
  CHECK(K.support(diag) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(K.radial(diag) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));
  CHECK(K.radial(Direction::axis(3, 1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("radial never exceeds support on grid nodes") {
  std::mt19937_64 rng(11);
  for (int n : {2, 3}) {
    SphereQuadrature grid = sphere_grid(n, 16);
    for (int trial = 0; trial < 8; ++trial) {
      StarBody K = StarBody::from_spec(oracles::random_convex_spec(n, rng));
      for (const auto& xi : grid.nodes)
        CHECK(K.radial(xi) <= K.support(xi) + 1e-10);
    }
  }
}

TEST_CASE("reflection is an involution on radial evaluations") {
  auto spec = ConvexBodySpec::ellipsoid(Vec{0.2, -0.1, 0.0}, {1.0, 1.2, 0.8});
  StarBody K = StarBody::from_spec(spec);
  StarBody KK = reflect(reflect(K));
  SphereQuadrature grid = sphere_grid(3, 12);
  for (const auto& xi : grid.nodes)
    CHECK(KK.radial(xi) == doctest::Approx(K.radial(xi)).epsilon(1e-15));
}

TEST_CASE("certified radii bracket the body") {
  std::mt19937_64 rng(23);
  for (int n : {2, 3}) {
    SphereQuadrature grid = sphere_grid(n, 24);
    for (int trial = 0; trial < 6; ++trial) {
      StarBody K = StarBody::from_spec(oracles::random_convex_spec(n, rng));
      CHECK(K.inner_radius() >= 0.4);
      CHECK(K.outer_radius() <= 2.0);
      for (const auto& xi : grid.nodes) {
        double rho = K.radial(xi);
        CHECK(rho >= K.inner_radius() - 1e-9);
        CHECK(rho <= K.outer_radius() + 1e-9);
      }
    }
  }
}

TEST_CASE("mollifying a centered ball stays round with an O(delta^2) radius shift") {
  // Rotation invariance forces the output to be a ball; its radius drops by
  // roughly delta^2 (n-1)/(2n) because the shell average of |xi + z| exceeds 1.
  StarBody B = StarBody::from_spec(ConvexBodySpec::ball(Vec{0, 0, 0}, 1.0));
  SphereQuadrature grid = sphere_grid(3, 12);
  for (double delta : {0.05, 0.2}) {
    StarBody Bd = mollify(B, delta);
    double ref = Bd.radial(grid.nodes[0]);
    for (const auto& xi : grid.nodes)
      CHECK(Bd.radial(xi) == doctest::Approx(ref).epsilon(1e-6));
    CHECK(std::abs(ref - 1.0) <= 0.5 * delta * delta);
  }
}

TEST_CASE("mollified cube stays radially close to the cube") {
  StarBody K = StarBody::from_spec(ConvexBodySpec::cube(3, 1.0));
  StarBody Kd = mollify(K, 0.05);
  SphereQuadrature grid = sphere_grid(3, 16);
  CHECK(radial_metric(K, Kd, grid).value <= 0.2);
}

TEST_CASE("mollifier containment sandwich holds node-wise") {
  std::vector<StarBody> bodies;
  bodies.push_back(StarBody::from_spec(ConvexBodySpec::cube(3, 1.0)));
  bodies.push_back(
      StarBody::from_spec(ConvexBodySpec::ball(Vec{0.2, 0.0, 0.0}, 1.0)));
  SphereQuadrature grid = sphere_grid(3, 16);
  for (const auto& K : bodies) {
    double r = K.inner_radius(), R = K.outer_radius();
    for (double delta : {0.02, 0.05, 0.1}) {
      StarBody Kd = mollify(K, delta);
      for (const auto& xi : grid.nodes) {
        double rho = Kd.radial(xi);
        CHECK(rho >= r / (1.0 + delta) - 1e-9);
        CHECK(rho <= R / (1.0 - delta) + 1e-9);
      }
    }
  }
}

TEST_CASE("mollify rejects out-of-range delta") {
  StarBody B = StarBody::from_spec(ConvexBodySpec::ball(Vec{0, 0}, 1.0));
  CHECK_THROWS_AS(mollify(B, 0.0), RangeError);
  CHECK_THROWS_AS(mollify(B, 1.0), RangeError);
}

TEST_CASE("convexity certificate flags a strongly star-shaped non-convex body") {
  std::vector<HarmonicTerm> terms{{4, 0, 0.45}};
  auto spec = ConvexBodySpec::radial_series(2, 1.0, terms);
  CHECK_THROWS_AS(certify_convex(spec), InvalidBody);
}

TEST_CASE("radial series evaluates base plus harmonic terms") {
  std::vector<HarmonicTerm> terms{{2, 0, 0.05}, {3, 1, -0.02}};
  auto spec = ConvexBodySpec::radial_series(2, 1.0, terms);
  SphereQuadrature grid = sphere_grid(2, 16);
  for (const auto& xi : grid.nodes) {
    double expect = 1.0 + 0.05 * basis_eval(2, 2, 0, xi) -
                    0.02 * basis_eval(2, 3, 1, xi);
    CHECK(spec_radial(spec, xi) == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("bodies without the origin interior are rejected") {
  CHECK_THROWS_AS(ConvexBodySpec::ball(Vec{2.0, 0.0}, 1.0).validate(), InvalidBody);
  CHECK_THROWS_AS(ConvexBodySpec::ball(Vec{0.0, 0.0}, -1.0).validate(), InvalidBody);
  std::vector<HarmonicTerm> huge{{1, 0, 5.0}};
  CHECK_THROWS_AS(ConvexBodySpec::radial_series(2, 1.0, huge).validate(),
                  InvalidBody);
}

TEST_CASE("spec files round-trip through JSON") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    ConvexBodySpec spec = oracles::random_convex_spec(3, rng);
    ConvexBodySpec back = parse_body_spec(body_spec_to_json(spec));
    SphereQuadrature grid = sphere_grid(3, 8);
    for (const auto& xi : grid.nodes)
      CHECK(spec_radial(back, xi) ==
            doctest::Approx(spec_radial(spec, xi)).epsilon(1e-14));
  }
  ConvexBodySpec cube = parse_body_spec(body_spec_to_json(ConvexBodySpec::cube(2, 0.7)));
  CHECK(spec_radial(cube, Direction::axis(2, 0)) == doctest::Approx(0.7));
}

TEST_CASE("malformed specs raise SpecError") {
  CHECK_THROWS_AS(parse_body_spec("not json at all"), SpecError);
  CHECK_THROWS_AS(parse_body_spec("{\"dim\": 3}"), SpecError);
  CHECK_THROWS_AS(parse_body_spec("{\"type\": \"torus\", \"dim\": 3}"), SpecError);
  CHECK_THROWS_AS(
      parse_body_spec("{\"type\": \"ellipsoid\", \"dim\": 2, \"parameters\": {}}"),
      SpecError);
  CHECK_THROWS_AS(read_body_spec("/nonexistent/path.json"), SpecError);
}
