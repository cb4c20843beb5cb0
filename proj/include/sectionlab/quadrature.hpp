#pragma once

#include <vector>

#include "sectionlab/vec.hpp"

namespace sectionlab {

// Nodes and weights on S^{n-1}.  Weights sum to omega_n (non-normalized
// spherical measure).
struct SphereQuadrature {
  int dim = 0;
  int order = 0;
  std::vector<Direction> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }

  template <typename F>
  double integrate(F&& f) const {
    std::vector<double> vals(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) vals[i] = f(nodes[i]);
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * vals[i];
    return s;
  }
};

// Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int npts, std::vector<double>& x, std::vector<double>& w);

// Rule for int_{-1}^{1} f(u) (1-u^2)^{(n-3)/2} du, exact for polynomial f of
// high degree (Gauss-Legendre with the weight folded in for odd n,
// Chebyshev second kind for even n).
void polar_weight_rule(int n, int npts, std::vector<double>& u,
                       std::vector<double>& w);

// n=2: uniform trapezoid on the circle with `order` nodes.
// n>=3: product of a 1D rule in the polar cosine (exact against the
// (1-u^2)^{(n-3)/2} surface weight) with a grid on S^{n-2}.
SphereQuadrature sphere_grid(int n, int order);

}  // namespace sectionlab
