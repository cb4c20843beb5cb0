#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "sectionlab/quadrature.hpp"
#include "sectionlab/vec.hpp"

namespace sectionlab {

using Complex = std::complex<double>;

// Dimension of the space H_m^n of degree-m spherical harmonics on S^{n-1}.
int harmonic_dim(int n, int m);

// Value of the index-th member of a fixed real orthonormal basis of H_m^n.
// n=2 is the trig basis {cos m theta, sin m theta}/sqrt(pi); n>=3 is built
// recursively from Gegenbauer polynomials in the polar cosine.
double basis_eval(int n, int m, int index, const Direction& xi);

// Per-degree coefficient blocks in the fixed real orthonormal basis.
// Blocks are complex so that the image under I_p lives in the same type;
// expansions of real functions carry zero imaginary parts.
struct HarmonicExpansion {
  int dim = 0;
  int max_degree = 0;
  std::vector<std::vector<Complex>> blocks;
  double residual = 0.0;  // ||f - synthesis||_{L^2} on the expansion grid

  double block_norm_sq(int m) const;
  double total_norm_sq() const;
};

using SphereFn = std::function<double(const Direction&)>;

// Condensed harmonic expansion by quadrature.  Requires
// quad.order >= 2*max_degree + 2 (throws ResolutionError otherwise).
HarmonicExpansion expand(const SphereFn& f, const SphereQuadrature& quad,
                         int max_degree);

Complex synthesize(const HarmonicExpansion& e, const Direction& xi);

// Eigenvalue of I_p on degree-m harmonics; real for even m, purely
// imaginary for odd m.  Requires 0 < p < n.
Complex lambda_eigenvalue(int n, double p, int m);

// Multiplies each degree block by lambda_m(n, p).
HarmonicExpansion apply_Ip(const HarmonicExpansion& e, double p);

// ||nabla_o f||^2 = sum_m m(m+n-2) ||Q_m||^2.
double gradient_norm_sq(const HarmonicExpansion& e);

}  // namespace sectionlab
