#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sectionlab/body.hpp"
#include "sectionlab/metrics.hpp"
#include "sectionlab/quadrature.hpp"

namespace sectionlab {

// Absolute verdicts are only claimed where the underlying constants are
// explicit; gate_not_met marks hypothesis failure, never a violation.
enum class Verdict { proved_scale, consistent, violated, gate_not_met };

std::string verdict_name(Verdict v);

struct StabilityReport {
  std::string theorem;
  double epsilon = 0.0;
  double distance = 0.0;
  std::optional<double> bound_value;
  double exponent_expected = 0.0;
  double exponent_fitted = 0.0;  // set by sweep drivers, 0 otherwise
  Verdict verdict = Verdict::consistent;
  std::string note;
  int grid_order = 0;
};

// Stability exponent of the symmetry theorem: 1/2 (n=2), 1/(2(n+1))
// (n=3,4), 1/((n-2)(n+1)) (n>=5).
double q_exponent(int n);

// Exponent of the fractional-derivative theorem: 2/(n+1) when n <= 2p+2,
// else 4/((n-2p)(n+1)).
double q_exponent_frac(int n, double p);

// CK = IK for certified origin-symmetric bodies, up to quadrature and
// optimizer tolerance.
StabilityReport verify_mmo_forward(const StarBody& K, const SphereQuadrature& quad);

// rho(K,-K) against rho(CK,IK): explicit constants for n=2, exponent
// consistency for n >= 3 (ratio_cap is the sweep-calibrated cap).
StabilityReport verify_main1(const StarBody& K, const SphereQuadrature& quad,
                             double ratio_cap = 0.0);

// Maximal sections close to the origin transfer to the symmetry bound via
// the Lipschitz constant.
StabilityReport verify_cor1(const StarBody& K, const SphereQuadrature& quad);

// Fractional-derivative stability: epsilon is the sup gap of A^{(p)}(0)
// over grid directions.
StabilityReport verify_main2(const StarBody& K, const StarBody& L, double p,
                             const SphereQuadrature& quad, double ratio_cap = 0.0);

// Integral of |A'(0)| (n=2, explicit constant) or of |A'(0)|^2 (n >= 3,
// consistency in sqrt(epsilon)).
StabilityReport verify_lemma_intparallel(const StarBody& K,
                                         const SphereQuadrature& quad);

// ||I_p f||_2 against rho(K,L) for f = rho_K^{n-p} - rho_L^{n-p}; reports
// the gradient-term bound and the regime exponent.
StabilityReport keylemma_bound(const StarBody& K, const StarBody& L, double p,
                               const SphereQuadrature& quad, int max_degree);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of log-space residuals
};

// Least-squares slope of log(dist) against log(eps).  Requires >= 5 points
// with eps spanning at least two decades.
ExponentFit exponent_fit(const std::vector<double>& eps,
                         const std::vector<double>& dist);

}  // namespace sectionlab
