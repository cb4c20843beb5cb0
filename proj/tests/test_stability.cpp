#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sectionlab/body.hpp"
#include "sectionlab/constants.hpp"
#include "sectionlab/errors.hpp"
#include "sectionlab/harmonics.hpp"
#include "sectionlab/quadrature.hpp"
#include "sectionlab/stability.hpp"

using namespace sectionlab;

TEST_CASE("stability exponents") {
  CHECK(q_exponent(2) == doctest::Approx(0.5));
  CHECK(q_exponent(3) == doctest::Approx(1.0 / 8.0));
  CHECK(q_exponent(4) == doctest::Approx(1.0 / 10.0));
  CHECK(q_exponent(5) == doctest::Approx(1.0 / 18.0));
  CHECK(q_exponent(7) == doctest::Approx(1.0 / 40.0));
  CHECK_THROWS_AS(q_exponent(1), RangeError);

  CHECK(q_exponent_frac(3, 0.5) == doctest::Approx(0.5));
  CHECK(q_exponent_frac(5, 0.5) == doctest::Approx(1.0 / 6.0));
  CHECK(q_exponent_frac(5, 2.0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("symmetric bodies pass the forward characterization") {
  SphereQuadrature q2 = sphere_grid(2, 16);
  for (auto spec : {ConvexBodySpec::ball(Vec{0, 0}, 1.0),
                    ConvexBodySpec::ellipsoid(Vec{0, 0}, {1.3, 0.8}),
                    ConvexBodySpec::cube(2, 1.0)}) {
    StabilityReport rep = verify_mmo_forward(StarBody::from_spec(spec), q2);
    CHECK(rep.verdict == Verdict::proved_scale);
    CHECK(rep.epsilon <= 5e-6);
  }
  SphereQuadrature q3 = sphere_grid(3, 8);
  StabilityReport rep =
      verify_mmo_forward(StarBody::from_spec(ConvexBodySpec::ball(Vec{0, 0, 0}, 1.0)), q3);
  CHECK(rep.verdict == Verdict::proved_scale);
  CHECK_THROWS_AS(
      verify_mmo_forward(
          StarBody::from_spec(ConvexBodySpec::ball(Vec{0.2, 0.0}, 1.0)), q2),
      PreconditionError);
}

TEST_CASE("planar symmetry bound on shifted disks") {
  SphereQuadrature quad = sphere_grid(2, 64);
  {
    StarBody K = StarBody::from_spec(ConvexBodySpec::ball(Vec{0.01, 0.0}, 1.0));
    StabilityReport rep = verify_main1(K, quad);
    CHECK(rep.verdict == Verdict::proved_scale);
    CHECK(rep.epsilon == doctest::Approx(1e-4).epsilon(0.05));
    CHECK(rep.distance == doctest::Approx(0.02).epsilon(1e-3));
    REQUIRE(rep.bound_value.has_value());
    CHECK(rep.distance <= *rep.bound_value);
  }
  {
    // Larger shifts fail the smallness gate rather than the bound.
    StarBody K = StarBody::from_spec(ConvexBodySpec::ball(Vec{0.05, 0.0}, 1.0));
    StabilityReport rep = verify_main1(K, quad);
    CHECK(rep.verdict == Verdict::gate_not_met);
  }
}

TEST_CASE("symmetry bound is never violated on random planar convex bodies") {
  std::mt19937_64 rng(71);
  SphereQuadrature quad = sphere_grid(2, 48);
  for (int trial = 0; trial < 6; ++trial) {
    StarBody K = StarBody::from_spec(oracles::random_convex_spec(2, rng));
    StabilityReport rep = verify_main1(K, quad);
    CHECK(rep.verdict != Verdict::violated);
  }
}

TEST_CASE("shifted ball in 3d is consistent with the symmetry exponent") {
  SphereQuadrature quad = sphere_grid(3, 10);
  double s = 0.005;
  StarBody K = StarBody::from_spec(ConvexBodySpec::ball(Vec{s, 0.0, 0.0}, 1.0));
  StabilityReport rep = verify_main1(K, quad);
  CHECK(rep.verdict == Verdict::consistent);
  CHECK(rep.epsilon == doctest::Approx(pi * s * s).epsilon(0.05));
  CHECK(rep.distance == doctest::Approx(2.0 * s).epsilon(1e-2));
  CHECK(rep.exponent_expected == doctest::Approx(1.0 / 8.0));
}

TEST_CASE("maximal-section transfer on near-symmetric planar bodies") {
  SphereQuadrature quad = sphere_grid(2, 32);
  {
    StarBody E = StarBody::from_spec(ConvexBodySpec::ellipsoid(Vec{0, 0}, {1.2, 0.9}));
    StabilityReport rep = verify_cor1(E, quad);
    CHECK(rep.verdict == Verdict::proved_scale);
    CHECK(rep.epsilon <= 1e-3);
  }
  {
    double s = 0.01;
    StarBody K = StarBody::from_spec(ConvexBodySpec::ball(Vec{s, 0.0}, 1.0));
    StabilityReport rep = verify_cor1(K, quad);
    CHECK(rep.verdict != Verdict::violated);
    CHECK(rep.epsilon == doctest::Approx(s).epsilon(0.2));
  }
}

TEST_CASE("fractional-derivative comparison of a body with itself") {
  SphereQuadrature quad = sphere_grid(3, 8);
  StarBody B = StarBody::from_spec(ConvexBodySpec::ball(Vec{0, 0, 0}, 1.0));
  StabilityReport rep = verify_main2(B, B, 0.5, quad);
  CHECK(rep.verdict == Verdict::proved_scale);
  CHECK(rep.epsilon == 0.0);
  CHECK_THROWS_AS(verify_main2(B, B, 1.0, quad), RangeError);
  CHECK_THROWS_AS(verify_main2(B, B, 2.5, quad), RangeError);
}

TEST_CASE("fractional-derivative gap of dilated balls is consistent") {
  SphereQuadrature quad = sphere_grid(3, 8);
  StarBody B = StarBody::from_spec(ConvexBodySpec::ball(Vec{0, 0, 0}, 1.0));
  StarBody D = StarBody::from_spec(ConvexBodySpec::ball(Vec{0, 0, 0}, 1.05));
  StabilityReport rep = verify_main2(B, D, 0.5, quad);
  CHECK(rep.verdict == Verdict::consistent);
  CHECK(rep.epsilon > 0.0);
  CHECK(rep.distance == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(rep.exponent_expected == doctest::Approx(0.5));
}

TEST_CASE("integrated derivative bound at the origin") {
  {
    double s = 0.01;
    SphereQuadrature quad = sphere_grid(2, 64);
    StarBody K = StarBody::from_spec(ConvexBodySpec::ball(Vec{s, 0.0}, 1.0));
    StabilityReport rep = verify_lemma_intparallel(K, quad);
    CHECK(rep.verdict == Verdict::proved_scale);
    // Integral of |A'(0)| over the circle: 8 s to first order.
    CHECK(rep.distance == doctest::Approx(8.0 * s).epsilon(0.01));
    REQUIRE(rep.bound_value.has_value());
    CHECK(rep.distance <= *rep.bound_value);
  }
  {
    SphereQuadrature quad = sphere_grid(3, 8);
    StarBody E = StarBody::from_spec(
        ConvexBodySpec::ellipsoid(Vec{0, 0, 0}, {1.0, 1.1, 0.9}));
    StabilityReport rep = verify_lemma_intparallel(E, quad);
    CHECK(rep.verdict == Verdict::consistent);
    CHECK(rep.distance <= 1e-8);
  }
}

TEST_CASE("operator norm bound for dilated balls") {
  SphereQuadrature quad = sphere_grid(3, 20);
  StarBody B = StarBody::from_spec(ConvexBodySpec::ball(Vec{0, 0, 0}, 1.0));
  StarBody D = StarBody::from_spec(ConvexBodySpec::ball(Vec{0, 0, 0}, 1.05));
  double p = 0.5;
  StabilityReport rep = keylemma_bound(B, D, p, quad, 8);
  CHECK(rep.verdict == Verdict::consistent);
  // f is the constant 1 - 1.05^{n-p}; only the degree-0 eigenvalue acts.
  double f0 = 1.0 - std::pow(1.05, 3.0 - p);
  double expect = std::abs(lambda_eigenvalue(3, p, 0)) * std::abs(f0) *
                  std::sqrt(omega_n(3));
  CHECK(rep.epsilon == doctest::Approx(expect).epsilon(1e-8));
  CHECK(rep.note.find("holds") != std::string::npos);

  StabilityReport same = keylemma_bound(B, B, p, quad, 8);
  CHECK(same.verdict == Verdict::proved_scale);
  CHECK(same.epsilon == 0.0);
  CHECK_THROWS_AS(keylemma_bound(B, D, 3.5, quad, 8), RangeError);
}

TEST_CASE("exponent fit recovers synthetic power laws") {
  std::vector<double> eps, half, lin;
  for (double e = 1e-6; e <= 1.1e-2; e *= 10.0) {
    eps.push_back(e);
    half.push_back(3.0 * std::sqrt(e));
    lin.push_back(0.7 * e);
  }
  ExponentFit f1 = exponent_fit(eps, half);
  CHECK(f1.slope == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(f1.residual <= 1e-10);
  ExponentFit f2 = exponent_fit(eps, lin);
  CHECK(f2.slope == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(exponent_fit({1e-3, 1e-2}, {1.0, 2.0}), FitError);
  std::vector<double> narrow{1e-3, 2e-3, 3e-3, 4e-3, 5e-3};
  CHECK_THROWS_AS(exponent_fit(narrow, narrow), FitError);
  std::vector<double> bad{1e-6, 1e-5, 1e-4, 1e-3, 0.0};
  CHECK_THROWS_AS(exponent_fit(bad, narrow), FitError);
}
