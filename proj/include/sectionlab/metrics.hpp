#pragma once

#include <utility>

#include "sectionlab/body.hpp"
#include "sectionlab/quadrature.hpp"

namespace sectionlab {

struct RadialMetricResult {
  double value = 0.0;
  Direction argmax;
  int grid_order = 0;
};

// Sup over grid nodes of |rho_K - rho_L|.  With refine=true the grid order
// doubles until the maximum changes by less than rel. 1e-3.
RadialMetricResult radial_metric(const StarBody& K, const StarBody& L,
                                 const SphereQuadrature& quad, bool refine = false);

// (delta_inf, delta_2) between two convex bodies via their support functions.
std::pair<double, double> hausdorff_and_l2(const StarBody& K, const StarBody& L,
                                           const SphereQuadrature& quad);

struct VitaleResult {
  double lower = 0.0;
  double middle = 0.0;
  double upper = 0.0;
  double diameter = 0.0;
  bool holds = false;
};

// Chain lower <= delta_2^2 <= omega_n delta_inf^2 with the diameter of the
// union computed as the grid maximum of h(xi) + h(-xi).
VitaleResult vitale_check(const StarBody& K, const StarBody& L,
                          const SphereQuadrature& quad);

}  // namespace sectionlab
