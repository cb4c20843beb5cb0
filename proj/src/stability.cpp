#include "sectionlab/stability.hpp"

#include <algorithm>
#include <cmath>

#include "sectionlab/constants.hpp"
#include "sectionlab/errors.hpp"
#include "sectionlab/fractional.hpp"
#include "sectionlab/harmonics.hpp"
#include "sectionlab/parallel.hpp"
#include "sectionlab/sections.hpp"

namespace sectionlab {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::proved_scale: return "proved-scale";
    case Verdict::consistent: return "consistent";
    case Verdict::violated: return "violated";
    case Verdict::gate_not_met: return "gate-not-met";
  }
  return "unknown";
}

double q_exponent(int n) {
  if (n < 2) throw RangeError("q_exponent: n must be >= 2");
  if (n == 2) return 0.5;
  if (n <= 4) return 1.0 / (2.0 * (n + 1));
  return 1.0 / ((n - 2.0) * (n + 1.0));
}

double q_exponent_frac(int n, double p) {
  if (n <= 2.0 * p + 2.0) return 2.0 / (n + 1.0);
  return 4.0 / ((n - 2.0 * p) * (n + 1.0));
}

namespace {

double main1_gate(double r) {
  double a = std::sqrt(3.0) * r / (6.0 * std::sqrt(3.0) * pi * r + 32.0 * pi);
  return std::min(a * a, r * r / 16.0);
}

double main1_bound_2d(double r, double R, double eps) {
  return (24.0 * pi + 128.0 * pi / (std::sqrt(3.0) * r)) * R * std::sqrt(eps);
}

}  // namespace

StabilityReport verify_mmo_forward(const StarBody& K, const SphereQuadrature& quad) {
  StarBody mK = reflect(K);
  double sym = radial_metric(K, mK, quad).value;
  if (sym >= 1e-10)
    throw PreconditionError("verify_mmo_forward: body is not certified origin-symmetric");

  StarBody IK = intersection_body(K, quad);
  StarBody CK = cross_section_body(K, quad);
  StabilityReport rep;
  rep.theorem = "mmo-forward";
  rep.grid_order = quad.order;
  rep.epsilon = radial_metric(CK, IK, quad).value;
  rep.distance = sym;
  rep.verdict = rep.epsilon <= 5e-6 ? Verdict::proved_scale : Verdict::violated;
  return rep;
}

StabilityReport verify_main1(const StarBody& K, const SphereQuadrature& quad,
                             double ratio_cap) {
  const int n = K.dim();
  const double r = K.inner_radius(), R = K.outer_radius();
  if (ratio_cap <= 0.0) ratio_cap = 10.0 * R;

  StarBody IK = intersection_body(K, quad);
  StarBody CK = cross_section_body(K, quad);
  double eps = radial_metric(CK, IK, quad).value;
  double asym = radial_metric(K, reflect(K), quad).value;

  StabilityReport rep;
  rep.theorem = "main1";
  rep.grid_order = quad.order;
  rep.epsilon = eps;
  rep.distance = asym;
  rep.exponent_expected = q_exponent(n);

  bool gate_ok = eps < main1_gate(r);
  if (n == 2) {
    rep.bound_value = main1_bound_2d(r, R, eps);
    if (!gate_ok) {
      rep.verdict = Verdict::gate_not_met;
      rep.note = "epsilon exceeds the smallness gate; bound still recorded";
    } else {
      rep.verdict = asym <= *rep.bound_value ? Verdict::proved_scale : Verdict::violated;
    }
    return rep;
  }
  rep.note = "n >= 3 constants are symbolic; consistency verdict only";
  if (!gate_ok) {
    rep.verdict = Verdict::gate_not_met;
    return rep;
  }
  rep.verdict = asym <= ratio_cap * std::pow(eps, rep.exponent_expected)
                    ? Verdict::consistent
                    : Verdict::violated;
  return rep;
}

StabilityReport verify_cor1(const StarBody& K, const SphereQuadrature& quad) {
  const int n = K.dim();
  const double r = K.inner_radius(), R = K.outer_radius();
  const double L = lipschitz_L(n);

  SphereQuadrature sub = n >= 3 ? sphere_grid(n - 1, 32) : SphereQuadrature{};
  std::vector<double> tks(quad.size());
  parallel_for(quad.size(), [&](std::size_t i) {
    tks[i] = std::abs(max_section(K, quad.nodes[i], sub).t_star);
  });
  double eps_tilde = *std::max_element(tks.begin(), tks.end());

  double LRr = L * std::pow(R, n - 1);
  double gate = std::min({r / 2.0,
                          3.0 * r * r * r /
                              (LRr * std::pow(6.0 * std::sqrt(3.0) * pi * r + 32.0 * pi, 2)),
                          r * r * r / (16.0 * LRr)});
  double transfer = LRr / r * eps_tilde;

  StabilityReport rep;
  rep.theorem = "cor1";
  rep.grid_order = quad.order;
  rep.epsilon = eps_tilde;
  rep.distance = radial_metric(K, reflect(K), quad).value;
  rep.exponent_expected = q_exponent(n);
  rep.note = "transfer epsilon = " + std::to_string(transfer);
  if (!(eps_tilde < gate)) {
    rep.verdict = Verdict::gate_not_met;
    return rep;
  }
  if (n == 2) {
    rep.bound_value = main1_bound_2d(r, R, transfer);
    rep.verdict = rep.distance <= *rep.bound_value ? Verdict::proved_scale
                                                   : Verdict::violated;
  } else {
    rep.verdict = rep.distance <= 10.0 * R * std::pow(transfer, rep.exponent_expected)
                      ? Verdict::consistent
                      : Verdict::violated;
  }
  return rep;
}

StabilityReport verify_main2(const StarBody& K, const StarBody& L, double p,
                             const SphereQuadrature& quad, double ratio_cap) {
  const int n = K.dim();
  if (L.dim() != n) throw DimError("verify_main2: dimension mismatch");
  if (!(p > -1.0 && p < n - 1) || integer_distance(p) < 1e-6)
    throw RangeError("verify_main2: p must be a non-integer in (-1, n-1)");
  const double R = std::max(K.outer_radius(), L.outer_radius());
  if (ratio_cap <= 0.0) ratio_cap = 10.0 * R;

  FractionalOrder order = FractionalOrder::of(p);
  SphereQuadrature sub = n >= 3 ? sphere_grid(n - 1, 16) : SphereQuadrature{};
  std::vector<double> gaps(quad.size());
  parallel_for(quad.size(), [&](std::size_t i) {
    gaps[i] = std::abs(frac_section(K, quad.nodes[i], order, sub) -
                       frac_section(L, quad.nodes[i], order, sub));
  });
  double eps = *std::max_element(gaps.begin(), gaps.end());

  StabilityReport rep;
  rep.theorem = "main2";
  rep.grid_order = quad.order;
  rep.epsilon = eps;
  rep.distance = radial_metric(K, L, quad).value;
  rep.exponent_expected = q_exponent_frac(n, p);
  rep.note = "constants C(n,p,r,R) are symbolic; consistency verdict only";
  if (rep.epsilon == 0.0) {
    rep.verdict = rep.distance <= 1e-10 ? Verdict::proved_scale : Verdict::violated;
    return rep;
  }
  rep.verdict = rep.distance <= ratio_cap * std::pow(eps, rep.exponent_expected)
                    ? Verdict::consistent
                    : Verdict::violated;
  return rep;
}

StabilityReport verify_lemma_intparallel(const StarBody& K,
                                         const SphereQuadrature& quad) {
  const int n = K.dim();
  const double r = K.inner_radius();

  StarBody IK = intersection_body(K, quad);
  StarBody CK = cross_section_body(K, quad);
  double eps = radial_metric(CK, IK, quad).value;

  StabilityReport rep;
  rep.theorem = "lemma-intparallel";
  rep.grid_order = quad.order;
  rep.epsilon = eps;
  if (!(eps < r * r / 16.0)) {
    rep.verdict = Verdict::gate_not_met;
    return rep;
  }

  SphereQuadrature sub = n >= 3 ? sphere_grid(n - 1, 32) : SphereQuadrature{};
  double lhs = 0.0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    double d = section_derivative(K, quad.nodes[i], 0.0, 1, sub).value;
    lhs += quad.weights[i] * (n == 2 ? std::abs(d) : d * d);
  }
  rep.distance = lhs;

  if (n == 2) {
    rep.bound_value = (6.0 * pi + 32.0 * pi / (std::sqrt(3.0) * r)) * std::sqrt(eps);
    rep.verdict = lhs <= *rep.bound_value ? Verdict::proved_scale : Verdict::violated;
  } else {
    rep.exponent_expected = 0.5;
    rep.note = "ratio lhs/sqrt(eps) = " +
               std::to_string(eps > 0.0 ? lhs / std::sqrt(eps) : 0.0);
    rep.verdict = Verdict::consistent;
  }
  return rep;
}

StabilityReport keylemma_bound(const StarBody& K, const StarBody& L, double p,
                               const SphereQuadrature& quad, int max_degree) {
  const int n = K.dim();
  if (!(p > 0.0 && p < n)) throw RangeError("keylemma_bound: p must lie in (0, n)");
  const double r = std::min(K.inner_radius(), L.inner_radius());
  const double R = std::max(K.outer_radius(), L.outer_radius());

  auto f = [&](const Direction& xi) {
    return std::pow(K.radial(xi), n - p) - std::pow(L.radial(xi), n - p);
  };
  HarmonicExpansion ef = expand(f, quad, max_degree);
  HarmonicExpansion eIf = apply_Ip(ef, p);

  StabilityReport rep;
  rep.theorem = "keylemma";
  rep.grid_order = quad.order;
  rep.epsilon = std::sqrt(eIf.total_norm_sq());
  rep.distance = radial_metric(K, L, quad).value;
  rep.exponent_expected =
      n <= 2.0 * p ? 2.0 / (n + 1.0) : 4.0 / ((n + 2.0 - 2.0 * p) * (n + 1.0));

  double grad_sq = gradient_norm_sq(ef);
  double grad_bound =
      16.0 * (n - p) * (n - p) * std::pow(R, 2.0 * (n + 1 - p)) / (r * r) * omega_n(n);
  rep.note = "gradient bound " + std::string(grad_sq <= grad_bound ? "holds" : "FAILS");
  if (grad_sq > grad_bound) {
    rep.verdict = Verdict::violated;
    return rep;
  }
  if (rep.epsilon == 0.0) {
    rep.verdict = rep.distance <= 1e-10 ? Verdict::proved_scale : Verdict::violated;
    return rep;
  }
  rep.verdict = rep.distance <= 10.0 * R * std::pow(rep.epsilon, rep.exponent_expected)
                    ? Verdict::consistent
                    : Verdict::violated;
  return rep;
}

ExponentFit exponent_fit(const std::vector<double>& eps,
                         const std::vector<double>& dist) {
  if (eps.size() != dist.size() || eps.size() < 5)
    throw FitError("exponent_fit: need at least 5 family members");
  double lo = 1e300, hi = 0.0;
  for (double e : eps) {
    if (!(e > 0.0)) throw FitError("exponent_fit: epsilon values must be positive");
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  if (hi / lo < 100.0)
    throw FitError("exponent_fit: epsilon must span at least two decades");

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double N = static_cast<double>(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    double x = std::log(eps[i]), y = std::log(dist[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  ExponentFit fit;
  fit.slope = (N * sxy - sx * sy) / (N * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / N;
  double rss = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    double res = std::log(dist[i]) - fit.slope * std::log(eps[i]) - fit.intercept;
    rss += res * res;
  }
  fit.residual = std::sqrt(rss / N);
  return fit;
}

}  // namespace sectionlab
