#pragma once

#include <cmath>
#include <numbers>

namespace sectionlab {

inline constexpr double pi = std::numbers::pi;

// Volume of the unit ball in R^n.
inline double kappa_n(int n) {
  return std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

// Surface area of S^{n-1} under non-normalized spherical measure.
inline double omega_n(int n) { return n * kappa_n(n); }

// Constant in the averaged-section radial formula: Gamma(n/2)/(sqrt(pi) Gamma((n-1)/2)).
inline double averaged_section_constant(int n) {
  return std::tgamma(0.5 * n) / (std::sqrt(pi) * std::tgamma(0.5 * (n - 1)));
}

// Lipschitz constant of the parallel section function on [-r/2, r/2],
// to be scaled by R^{n-1}/r.
inline double lipschitz_L(int n) {
  return 8.0 * (n - 1) * std::pow(pi, 0.5 * (n - 1)) / std::tgamma(0.5 * (n + 1));
}

}  // namespace sectionlab
