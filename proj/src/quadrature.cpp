#include "sectionlab/quadrature.hpp"

#include <cmath>

#include "sectionlab/constants.hpp"
#include "sectionlab/errors.hpp"

namespace sectionlab {

void gauss_legendre(int npts, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(npts), 0.0);
  w.assign(static_cast<std::size_t>(npts), 0.0);
  for (int i = 0; i < (npts + 1) / 2; ++i) {
    // Chebyshev initial guess, then Newton on P_n.
    double z = std::cos(pi * (i + 0.75) / (npts + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < npts; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = npts * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[static_cast<std::size_t>(i)] = -z;
    x[static_cast<std::size_t>(npts - 1 - i)] = z;
    double wi = 2.0 / ((1.0 - z * z) * pp * pp);
    w[static_cast<std::size_t>(i)] = wi;
    w[static_cast<std::size_t>(npts - 1 - i)] = wi;
  }
}

// For n odd the weight is a polynomial and is folded into Gauss-Legendre;
// for n even the half-integer part is handled by the Chebyshev rule of the
// second kind.
void polar_weight_rule(int n, int npts, std::vector<double>& u,
                       std::vector<double>& w) {
  int expo2 = n - 3;  // weight is (1-u^2)^{expo2/2}
  if (expo2 % 2 == 0) {
    gauss_legendre(npts, u, w);
    for (std::size_t i = 0; i < u.size(); ++i)
      w[i] *= std::pow(1.0 - u[i] * u[i], expo2 / 2);
  } else {
    // Chebyshev second kind: exact for f * (1-u^2)^{1/2}; remaining even
    // power folded in.
    u.assign(static_cast<std::size_t>(npts), 0.0);
    w.assign(static_cast<std::size_t>(npts), 0.0);
    for (int k = 1; k <= npts; ++k) {
      double th = k * pi / (npts + 1.0);
      u[static_cast<std::size_t>(k - 1)] = std::cos(th);
      double s2 = std::sin(th) * std::sin(th);
      w[static_cast<std::size_t>(k - 1)] =
          pi / (npts + 1.0) * s2 * std::pow(s2, (expo2 - 1) / 2);
    }
  }
}

SphereQuadrature sphere_grid(int n, int order) {
  if (n < 2) throw RangeError("sphere_grid: dimension must be >= 2");
  if (order < 4) throw RangeError("sphere_grid: order must be >= 4");

  SphereQuadrature q;
  q.dim = n;
  q.order = order;

  if (n == 2) {
    double w = 2.0 * pi / order;
    q.nodes.reserve(static_cast<std::size_t>(order));
    for (int j = 0; j < order; ++j) {
      double th = 2.0 * pi * j / order;
      q.nodes.push_back(Direction(Vec{std::cos(th), std::sin(th)}));
      q.weights.push_back(w);
    }
    return q;
  }

  std::vector<double> u, wu;
  polar_weight_rule(n, order + 2, u, wu);
  SphereQuadrature sub = sphere_grid(n - 1, order);

  q.nodes.reserve(u.size() * sub.size());
  q.weights.reserve(u.size() * sub.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    double s = std::sqrt(std::max(0.0, 1.0 - u[i] * u[i]));
    for (std::size_t j = 0; j < sub.size(); ++j) {
      Vec x(static_cast<std::size_t>(n));
      for (int k = 0; k < n - 1; ++k)
        x[static_cast<std::size_t>(k)] = s * sub.nodes[j][static_cast<std::size_t>(k)];
      x[static_cast<std::size_t>(n - 1)] = u[i];
      q.nodes.push_back(Direction(std::move(x)));
      q.weights.push_back(wu[i] * sub.weights[j]);
    }
  }
  return q;
}

}  // namespace sectionlab
