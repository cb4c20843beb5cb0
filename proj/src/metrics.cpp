#include "sectionlab/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "sectionlab/constants.hpp"
#include "sectionlab/errors.hpp"

namespace sectionlab {

namespace {

RadialMetricResult radial_metric_on(const StarBody& K, const StarBody& L,
                                    const SphereQuadrature& quad) {
  RadialMetricResult res{0.0, quad.nodes.front(), quad.order};
  for (const auto& node : quad.nodes) {
    double d = std::abs(K.radial(node) - L.radial(node));
    if (d > res.value) {
      res.value = d;
      res.argmax = node;
    }
  }
  return res;
}

}  // namespace

RadialMetricResult radial_metric(const StarBody& K, const StarBody& L,
                                 const SphereQuadrature& quad, bool refine) {
  if (K.dim() != L.dim() || K.dim() != quad.dim)
    throw DimError("radial_metric: dimension mismatch");
  RadialMetricResult res = radial_metric_on(K, L, quad);
  if (!refine) return res;
  int order = quad.order;
  for (int pass = 0; pass < 6; ++pass) {
    order *= 2;
    RadialMetricResult next = radial_metric_on(K, L, sphere_grid(quad.dim, order));
    double change = std::abs(next.value - res.value);
    res = next;
    if (change <= 1e-3 * std::max(next.value, 1e-300)) break;
  }
  return res;
}

std::pair<double, double> hausdorff_and_l2(const StarBody& K, const StarBody& L,
                                           const SphereQuadrature& quad) {
  if (K.dim() != L.dim() || K.dim() != quad.dim)
    throw DimError("hausdorff_and_l2: dimension mismatch");
  double dinf = 0.0, d2sq = 0.0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    double d = K.support(quad.nodes[i]) - L.support(quad.nodes[i]);
    dinf = std::max(dinf, std::abs(d));
    d2sq += quad.weights[i] * d * d;
  }
  return {dinf, std::sqrt(d2sq)};
}

VitaleResult vitale_check(const StarBody& K, const StarBody& L,
                          const SphereQuadrature& quad) {
  if (K.dim() != L.dim() || K.dim() != quad.dim)
    throw DimError("vitale_check: dimension mismatch");
  const int n = K.dim();
  auto [dinf, d2] = hausdorff_and_l2(K, L, quad);

  double D = 0.0;
  for (const auto& node : quad.nodes) {
    double hp = std::max(K.support(node), L.support(node));
    double hm = std::max(K.support(-node), L.support(-node));
    D = std::max(D, hp + hm);
  }

  VitaleResult res;
  res.diameter = D;
  res.lower = 2.0 * kappa_n(n - 1) * std::pow(D, 1 - n) / (n * (n + 1.0)) *
              std::pow(dinf, n + 1);
  res.middle = d2 * d2;
  res.upper = omega_n(n) * dinf * dinf;
  double slack = 1e-9 * std::max({res.lower, res.middle, res.upper, 1e-300});
  res.holds = res.lower <= res.middle + slack && res.middle <= res.upper + slack;
  return res;
}

}  // namespace sectionlab
