#include "sectionlab/fractional.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "sectionlab/constants.hpp"
#include "sectionlab/errors.hpp"
#include "sectionlab/harmonics.hpp"
#include "sectionlab/sections.hpp"

namespace sectionlab {

FractionalOrder FractionalOrder::of(double p) {
  FractionalOrder o;
  o.p = p;
  o.m = std::max(0, static_cast<int>(std::floor(p)) + 1);
  return o;
}

double integer_distance(double p) {
  return std::abs(p - std::round(p));
}

bool frac_ill_conditioned(double p) { return integer_distance(p) < 1e-3; }

double frac_derivative(const std::function<double(double)>& h,
                       double support_bound, const FractionalOrder& order,
                       const std::vector<double>& derivs_at_zero) {
  const double p = order.p;
  const int m = order.m;
  if (integer_distance(p) < 1e-6)
    throw PoleError("frac_derivative: p too close to an integer (Gamma pole)");
  if (!(p > -1.0 && p < m))
    throw RangeError("frac_derivative: need -1 < p < m");
  if (static_cast<int>(derivs_at_zero.size()) < m)
    throw RangeError("frac_derivative: missing classical derivatives at zero");

  // Taylor-subtracted integrand on (0, 1]; behaves like t^{m-1-p} at zero.
  auto taylor = [&](double t) {
    double s = 0.0, tk = 1.0, fact = 1.0;
    for (int k = 0; k < m; ++k) {
      if (k > 0) {
        tk *= t;
        fact *= k;
      }
      s += (k % 2 == 0 ? 1.0 : -1.0) * derivs_at_zero[static_cast<std::size_t>(k)] *
           tk / fact;
    }
    return s;
  };
  // The subtracted integrand t^{-1-p}(h(-t) - T(t)) behaves like
  // D t^{m-1-p} near zero, but the difference h(-t) - T(t) loses all
  // significant digits for very small t.  Below the threshold `a` the
  // integral is taken analytically with the leading coefficient D estimated
  // by Richardson extrapolation; on [a, 1] dyadic composite Gauss-Legendre
  // resolves the remaining endpoint behaviour.
  auto defect = [&](double t) { return h(-t) - taylor(t); };
  const double a = 1e-4;
  double s0 = 0.05;
  double D1 = defect(s0) / std::pow(s0, m);
  double D2 = defect(0.5 * s0) / std::pow(0.5 * s0, m);
  double D = 2.0 * D2 - D1;
  double I1 = D * std::pow(a, m - p) / (m - p);

  std::vector<double> gx, gw;
  gauss_legendre(24, gx, gw);
  double hi = 1.0;
  while (hi > a) {
    double lo = std::max(a, 0.5 * hi);
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double seg = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      double t = mid + half * gx[i];
      seg += gw[i] * std::pow(t, -1.0 - p) * defect(t);
    }
    I1 += half * seg;
    hi = lo;
  }

  // The definition's split point at 1 is kept literal; the tail reads only
  // over the support.
  double I2 = 0.0;
  if (support_bound > 1.0) {
    auto f2 = [&](double t) { return std::pow(t, -1.0 - p) * h(-t); };
    // Tolerance matches the noise floor of quadrature-backed h; tighter
    // requests only force full-depth subdivision without gaining accuracy.
    I2 = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f2, 1.0, support_bound, 8, 1e-9);
  }

  double S = 0.0, fact = 1.0;
  for (int k = 0; k < m; ++k) {
    if (k > 0) fact *= k;
    S += (k % 2 == 0 ? 1.0 : -1.0) * derivs_at_zero[static_cast<std::size_t>(k)] /
         (fact * (k - p));
  }

  return (I1 + I2 + S) / std::tgamma(-p);
}

double frac_section(const StarBody& K, const Direction& xi,
                    const FractionalOrder& order, const SphereQuadrature& quad_sub) {
  const int n = K.dim();
  if (!(order.p > -1.0 && order.p < n - 1))
    throw RangeError("frac_section: need -1 < p < n-1");
  if (K.smoothness() == Smoothness::polytope || K.smoothness() == Smoothness::c0)
    throw SmoothnessError("frac_section: body must be smooth; mollify first");

  std::vector<double> derivs;
  for (int k = 0; k < order.m; ++k) {
    if (k == 0)
      derivs.push_back(parallel_section(K, xi, 0.0, quad_sub));
    else
      derivs.push_back(section_derivative(K, xi, 0.0, k, quad_sub).value);
  }
  auto h = [&](double t) { return parallel_section(K, xi, t, quad_sub); };
  return frac_derivative(h, K.support(-xi), order, derivs);
}

FourierFracResult frac_section_fourier(const StarBody& K, const Direction& xi,
                                       double p, int max_degree,
                                       const SphereQuadrature& quad) {
  const int n = K.dim();
  if (!(1.0 + p > 0.0 && 1.0 + p < n))
    throw RangeError("frac_section_fourier: need 0 < 1+p < n");

  double expo = n - 1.0 - p;
  auto even_part = [&](const Direction& eta) {
    return std::pow(K.radial(eta), expo) + std::pow(K.radial(-eta), expo);
  };
  auto odd_part = [&](const Direction& eta) {
    return std::pow(K.radial(eta), expo) - std::pow(K.radial(-eta), expo);
  };

  HarmonicExpansion ge = apply_Ip(expand(even_part, quad, max_degree), 1.0 + p);
  HarmonicExpansion go = apply_Ip(expand(odd_part, quad, max_degree), 1.0 + p);
  Complex se = synthesize(ge, xi);
  Complex so = synthesize(go, xi);

  // The odd block carries purely imaginary eigenvalues; the conjugate
  // pairing (sign convention of the transform) makes the combination real.
  Complex val = (std::cos(0.5 * p * pi) * se - Complex(0.0, 1.0) * std::sin(0.5 * p * pi) * so) /
                (2.0 * pi * (n - 1.0 - p));
  FourierFracResult out;
  out.value = val.real();
  out.imag_residual = std::abs(val.imag());
  return out;
}

std::vector<double> integer_limit_check(const std::function<double(double)>& h,
                                        double support_bound, int k, int m,
                                        const std::vector<double>& derivs_at_zero,
                                        const std::vector<double>& approach) {
  if (k >= m) throw RangeError("integer_limit_check: need k < m");
  std::vector<double> gaps;
  gaps.reserve(approach.size());
  for (double p : approach) {
    FractionalOrder o{p, m};
    double v = frac_derivative(h, support_bound, o, derivs_at_zero);
    gaps.push_back(std::abs(v - derivs_at_zero[static_cast<std::size_t>(k)]));
  }
  return gaps;
}

}  // namespace sectionlab
