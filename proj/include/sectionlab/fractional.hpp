#pragma once

#include <functional>
#include <vector>

#include "sectionlab/body.hpp"
#include "sectionlab/quadrature.hpp"

namespace sectionlab {

// Non-integer order p with the smoothness order m in use (m > p, and the
// classical derivatives h^(k)(0), k < m, enter the definition).
struct FractionalOrder {
  double p = 0.5;
  int m = 1;

  // Smallest admissible m for a given p.
  static FractionalOrder of(double p);
};

// Distance from p to the nearest integer; the definition degenerates there.
double integer_distance(double p);
bool frac_ill_conditioned(double p);  // within 1e-3 of an integer

// Fractional derivative of h at zero.  `h` is evaluated at negative
// arguments through h(-t); `support_bound` is a B with h(-t) = 0 for t > B;
// `derivs_at_zero` holds h^(k)(0) for k = 0..m-1.
double frac_derivative(const std::function<double(double)>& h,
                       double support_bound, const FractionalOrder& order,
                       const std::vector<double>& derivs_at_zero);

// Fractional derivative of t -> A_{K,xi}(t) at zero; classical derivatives
// at zero by finite differences.  Requires a smooth (or mollified) body and
// -1 < p < n-1 non-integer.
double frac_section(const StarBody& K, const Direction& xi,
                    const FractionalOrder& order, const SphereQuadrature& quad_sub);

struct FourierFracResult {
  double value = 0.0;
  double imag_residual = 0.0;  // truncation diagnostic
};

// A^{(p)}(0) through the eigenvalue action of I_{1+p} on the even/odd parts
// of rho^{n-1-p}.  Requires 0 < 1+p < n.
FourierFracResult frac_section_fourier(const StarBody& K, const Direction& xi,
                                       double p, int max_degree,
                                       const SphereQuadrature& quad);

// |frac_derivative(h, p_j) - h^(k)(0)| along a sequence of p approaching an
// integer k.
std::vector<double> integer_limit_check(const std::function<double(double)>& h,
                                        double support_bound, int k, int m,
                                        const std::vector<double>& derivs_at_zero,
                                        const std::vector<double>& approach);

}  // namespace sectionlab
