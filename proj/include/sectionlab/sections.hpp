#pragma once

#include <vector>

#include "sectionlab/body.hpp"
#include "sectionlab/quadrature.hpp"

namespace sectionlab {

// Deterministic orthonormal frame of xi^perp (Householder reflection
// mapping e_n to xi); returns n-1 unit vectors.
std::vector<Vec> householder_frame(const Direction& xi);

// Distance from t*xi to the boundary of K along theta inside the hyperplane
// xi^perp + t*xi.  Returns 0 when t is outside the slab or t*xi lies
// outside K.
double slice_radial(const StarBody& K, const Direction& xi, double t,
                    const Direction& theta);

// A_{K,xi}(t) by polar integration of the slice radial function over
// S^{n-2} (chord length for n=2).  quad_sub is a grid on S^{n-2}, i.e. of
// dimension n-1; pass sphere_grid(n-1, order).
double parallel_section(const StarBody& K, const Direction& xi, double t,
                        const SphereQuadrature& quad_sub);

struct DerivativeEstimate {
  double value = 0.0;
  double error = 0.0;
};

// Central finite difference (order k = 1 or 2) with one Richardson
// extrapolation; h defaults to eps^{1/(k+2)} * R when passed as 0.
DerivativeEstimate section_derivative(const StarBody& K, const Direction& xi,
                                      double t, int k,
                                      const SphereQuadrature& quad_sub,
                                      double step = 0.0);

// Closed 2D formula for A'_{K,theta}(0) in terms of the radial function on
// the circle: -rho'(theta+pi/2)/rho(theta+pi/2) + rho'(theta-pi/2)/rho(theta-pi/2).
double prime_at_zero_2d(const StarBody& K, double theta);

struct MaxSection {
  double m = 0.0;       // maximal section value
  double t_star = 0.0;  // maximizer closest to zero (plateau rule)
};

MaxSection max_section(const StarBody& K, const Direction& xi,
                       const SphereQuadrature& quad_sub);

// Star body with radial function A_{K,xi}(0).
StarBody intersection_body(const StarBody& K, const SphereQuadrature& quad);

// Star body with radial function m_K(xi).
StarBody cross_section_body(const StarBody& K, const SphereQuadrature& quad);

enum class AveragedRoute { definition, radial_formula };

// Averaged section function f_K(t): (1/omega_n) int A_{K,xi}(t) dxi, or the
// equivalent radial form (C~(n)/(n-1)) int (rho^2 - t^2)_+^{(n-1)/2} dxi.
double averaged_section(const StarBody& K, double t, const SphereQuadrature& quad,
                        AveragedRoute route);

// d/dt of the averaged section via the radial form:
// -C~(n) t int (rho^2 - t^2)_+^{(n-3)/2} dxi.
double averaged_section_derivative(const StarBody& K, double t,
                                   const SphereQuadrature& quad);

struct LipschitzAudit {
  double max_ratio = 0.0;
  double bound = 0.0;
  bool holds = false;
};

// Samples |A(t)-A(s)|/|t-s| on [-r/2, r/2] against the explicit constant
// L(n) R^{n-1} / r.
LipschitzAudit lipschitz_audit(const StarBody& K, const SphereQuadrature& quad,
                               int samples, unsigned seed = 2024);

struct SectionProfile {
  Direction xi;
  std::vector<double> t_grid;
  std::vector<double> values;
  std::vector<double> derivatives;
  std::vector<double> concavity_residuals;  // of A^{1/(n-1)}, midpoint form
  double t_min = 0.0, t_max = 0.0;          // support window
};

// Samples A on a uniform grid spanning the inner 99% of the support window.
SectionProfile section_profile(const StarBody& K, const Direction& xi,
                               int points, const SphereQuadrature& quad_sub);

}  // namespace sectionlab
