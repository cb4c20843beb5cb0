#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sectionlab/constants.hpp"
#include "sectionlab/errors.hpp"
#include "sectionlab/harmonics.hpp"
#include "sectionlab/quadrature.hpp"

using namespace sectionlab;

TEST_CASE("harmonic space dimensions") {
  CHECK(harmonic_dim(2, 0) == 1);
  CHECK(harmonic_dim(2, 5) == 2);
  for (int m = 0; m <= 8; ++m) CHECK(harmonic_dim(3, m) == 2 * m + 1);
  for (int m = 0; m <= 6; ++m) CHECK(harmonic_dim(4, m) == (m + 1) * (m + 1));
}

TEST_CASE("basis is orthonormal (Gram matrix by quadrature)") {
  for (int n : {2, 3, 4}) {
    SphereQuadrature quad = sphere_grid(n, n == 4 ? 20 : 32);
    const int max_m = n == 4 ? 4 : 6;
    struct Id {
      int m, j;
    };
    std::vector<Id> ids;
    for (int m = 0; m <= max_m; ++m)
      for (int j = 0; j < harmonic_dim(n, m); ++j) ids.push_back({m, j});
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = a; b < ids.size(); ++b) {
        double g = quad.integrate([&](const Direction& xi) {
          return basis_eval(n, ids[a].m, ids[a].j, xi) *
                 basis_eval(n, ids[b].m, ids[b].j, xi);
        });
        CHECK(std::abs(g - (a == b ? 1.0 : 0.0)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("eigenvalue table entries") {
  CHECK(lambda_eigenvalue(2, 1.0, 0).real() ==
        doctest::Approx(2.0 * pi).epsilon(1e-12));
  CHECK(lambda_eigenvalue(2, 1.0, 0).imag() == 0.0);
  CHECK(lambda_eigenvalue(3, 2.0, 2).real() ==
        doctest::Approx(-8.0 * pi).epsilon(1e-12));
  CHECK(lambda_eigenvalue(3, 2.0, 1).imag() ==
        doctest::Approx(2.0 * pi * pi).epsilon(1e-12));
  CHECK(lambda_eigenvalue(3, 2.0, 1).real() == 0.0);
}

TEST_CASE("eigenvalues never vanish on the test lattice") {
  for (int n : {2, 3, 4}) {
    for (double p : {0.3, 0.5, 1.0, 1.5, n - 0.25}) {
      if (!(p > 0.0 && p < n)) continue;
      for (int m = 0; m <= 64; ++m)
        CHECK(std::abs(lambda_eigenvalue(n, p, m)) > 0.0);
    }
  }
  CHECK_THROWS_AS(lambda_eigenvalue(3, 0.0, 2), RangeError);
  CHECK_THROWS_AS(lambda_eigenvalue(3, 3.0, 2), RangeError);
}

TEST_CASE("operator acts as the eigenvalue on random pure harmonics") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int n : {2, 3}) {
    SphereQuadrature quad = sphere_grid(n, 32);
    for (int m = 0; m <= 6; ++m) {
      std::vector<double> coef(static_cast<std::size_t>(harmonic_dim(n, m)));
      for (auto& c : coef) c = uni(rng);
      auto f = [&](const Direction& xi) {
        double s = 0.0;
        for (int j = 0; j < static_cast<int>(coef.size()); ++j)
          s += coef[static_cast<std::size_t>(j)] * basis_eval(n, m, j, xi);
        return s;
      };
      double p = 1.2;
      HarmonicExpansion e = expand(f, quad, 8);
      HarmonicExpansion Ie = apply_Ip(e, p);
      Complex lam = lambda_eigenvalue(n, p, m);
      for (int probe = 0; probe < 5; ++probe) {
        Vec v(static_cast<std::size_t>(n));
        std::normal_distribution<double> gauss;
        for (auto& c : v) c = gauss(rng);
        Direction xi(v);
        Complex got = synthesize(Ie, xi);
        Complex expect = lam * f(xi);
        CHECK(std::abs(got - expect) <= 1e-8 * (1.0 + std::abs(expect)));
      }
    }
  }
}

TEST_CASE("expansion separates parity and the operator preserves it") {
  SphereQuadrature quad = sphere_grid(3, 32);
  auto even = [](const Direction& xi) { return xi[0] * xi[0] + 0.3; };
  HarmonicExpansion ee = expand(even, quad, 8);
  for (int m = 1; m <= 8; m += 2) CHECK(ee.block_norm_sq(m) <= 1e-20);
  auto odd = [](const Direction& xi) { return xi[0] + 0.5 * xi[2]; };
  HarmonicExpansion eo = expand(odd, quad, 8);
  for (int m = 0; m <= 8; m += 2) CHECK(eo.block_norm_sq(m) <= 1e-20);
  HarmonicExpansion Ieo = apply_Ip(eo, 1.5);
  for (int m = 0; m <= 8; m += 2) CHECK(Ieo.block_norm_sq(m) <= 1e-20);
}

TEST_CASE("Parseval round trip for band-limited input") {
  for (int n : {2, 3}) {
    SphereQuadrature quad = sphere_grid(n, 32);
    auto f = [n](const Direction& xi) {
      return 1.0 + 0.4 * basis_eval(n, 2, 0, xi) - 0.2 * basis_eval(n, 4, 1, xi);
    };
    HarmonicExpansion e = expand(f, quad, 6);
    double l2 = quad.integrate([&](const Direction& xi) {
      double v = f(xi);
      return v * v;
    });
    CHECK(e.total_norm_sq() == doctest::Approx(l2).epsilon(1e-9));
    CHECK(e.residual <= 1e-9);
    SphereQuadrature probe = sphere_grid(n, 16);
    for (const auto& xi : probe.nodes)
      CHECK(synthesize(e, xi).real() == doctest::Approx(f(xi)).epsilon(1e-9));
  }
}

TEST_CASE("aliasing guard rejects under-resolved grids") {
  SphereQuadrature quad = sphere_grid(3, 16);
  auto f = [](const Direction& xi) { return xi[0]; };
  CHECK_THROWS_AS(expand(f, quad, 12), ResolutionError);
}

TEST_CASE("gradient norm uses the degree weights") {
  SphereQuadrature quad = sphere_grid(3, 32);
  auto f = [](const Direction& xi) { return basis_eval(3, 3, 2, xi); };
  HarmonicExpansion e = expand(f, quad, 6);
  // For a unit-norm degree-3 harmonic on S^2: m (m + n - 2) = 3 * 4 = 12.
  CHECK(gradient_norm_sq(e) == doctest::Approx(12.0).epsilon(1e-8));
}
