#include "sectionlab/harmonics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "sectionlab/constants.hpp"
#include "sectionlab/errors.hpp"
#include "sectionlab/quadrature.hpp"

namespace sectionlab {

int harmonic_dim(int n, int m) {
  if (n == 2) return m == 0 ? 1 : 2;
  int total = 0;
  for (int l = 0; l <= m; ++l) total += harmonic_dim(n - 1, l);
  return total;
}

namespace {

// Gegenbauer polynomial C_k^{(alpha)}(u) by the three-term recurrence.
double gegenbauer(int k, double alpha, double u) {
  if (k == 0) return 1.0;
  double cm1 = 1.0;
  double c = 2.0 * alpha * u;
  for (int j = 2; j <= k; ++j) {
    double cn = (2.0 * (j + alpha - 1.0) * u * c - (j + 2.0 * alpha - 2.0) * cm1) / j;
    cm1 = c;
    c = cn;
  }
  return c;
}

// Polar factor without normalization: (1-u^2)^{l/2} C_{m-l}^{(l+(n-2)/2)}(u).
double polar_factor_raw(int n, int m, int l, double u) {
  double s2 = std::max(0.0, 1.0 - u * u);
  double alpha = l + 0.5 * (n - 2);
  return std::pow(s2, 0.5 * l) * gegenbauer(m - l, alpha, u);
}

// Normalization so that int_{-1}^1 g^2 (1-u^2)^{(n-3)/2} du = 1,
// computed once per (n, m, l).
double polar_norm(int n, int m, int l) {
  static std::map<std::tuple<int, int, int>, double> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_tuple(n, m, l);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  // g^2 times the surface weight is (1-u^2)^{(n-3)/2} times a polynomial,
  // which the exact-weight polar rule integrates without endpoint error.
  std::vector<double> x, w;
  polar_weight_rule(n, 4 * (m + 4), x, w);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double g = polar_factor_raw(n, m, l, x[i]);
    s += w[i] * g * g;
  }
  double norm = 1.0 / std::sqrt(s);
  cache[key] = norm;
  return norm;
}

}  // namespace

double basis_eval(int n, int m, int index, const Direction& xi) {
  if (m < 0 || index < 0 || index >= harmonic_dim(n, m))
    throw RangeError("basis_eval: index out of range");

  if (n == 2) {
    double theta = std::atan2(xi[1], xi[0]);
    if (m == 0) return 1.0 / std::sqrt(2.0 * pi);
    double c = 1.0 / std::sqrt(pi);
    return index == 0 ? c * std::cos(m * theta) : c * std::sin(m * theta);
  }

  double u = xi[static_cast<std::size_t>(n - 1)];
  double s = std::sqrt(std::max(0.0, 1.0 - u * u));
  Vec eta(static_cast<std::size_t>(n - 1), 0.0);
  if (s > 1e-300) {
    for (int k = 0; k < n - 1; ++k)
      eta[static_cast<std::size_t>(k)] = xi[static_cast<std::size_t>(k)] / s;
  } else {
    eta[0] = 1.0;
  }

  // Locate the (l, sub-index) pair for this flat index.
  int l = 0;
  int rem = index;
  while (rem >= harmonic_dim(n - 1, l)) {
    rem -= harmonic_dim(n - 1, l);
    ++l;
  }

  double g = polar_norm(n, m, l) * polar_factor_raw(n, m, l, u);
  if (g == 0.0 && l > 0) return 0.0;  // pole: only l=0 contributes
  return g * basis_eval(n - 1, l, rem, Direction(eta));
}

double HarmonicExpansion::block_norm_sq(int m) const {
  double s = 0.0;
  for (const auto& c : blocks[static_cast<std::size_t>(m)]) s += std::norm(c);
  return s;
}

double HarmonicExpansion::total_norm_sq() const {
  double s = 0.0;
  for (int m = 0; m <= max_degree; ++m) s += block_norm_sq(m);
  return s;
}

HarmonicExpansion expand(const SphereFn& f, const SphereQuadrature& quad,
                         int max_degree) {
  if (quad.order < 2 * max_degree + 2)
    throw ResolutionError("expand: quadrature order must be >= 2*max_degree+2");

  const std::size_t nn = quad.size();
  std::vector<double> fv(nn);
  for (std::size_t i = 0; i < nn; ++i) fv[i] = f(quad.nodes[i]);

  HarmonicExpansion e;
  e.dim = quad.dim;
  e.max_degree = max_degree;
  e.blocks.resize(static_cast<std::size_t>(max_degree) + 1);
  for (int m = 0; m <= max_degree; ++m) {
    int d = harmonic_dim(quad.dim, m);
    auto& blk = e.blocks[static_cast<std::size_t>(m)];
    blk.assign(static_cast<std::size_t>(d), Complex(0.0, 0.0));
    for (int j = 0; j < d; ++j) {
      double c = 0.0;
      for (std::size_t i = 0; i < nn; ++i)
        c += quad.weights[i] * fv[i] * basis_eval(quad.dim, m, j, quad.nodes[i]);
      blk[static_cast<std::size_t>(j)] = c;
    }
  }

  double res = 0.0;
  for (std::size_t i = 0; i < nn; ++i) {
    double d = fv[i] - synthesize(e, quad.nodes[i]).real();
    res += quad.weights[i] * d * d;
  }
  e.residual = std::sqrt(std::max(0.0, res));
  return e;
}

Complex synthesize(const HarmonicExpansion& e, const Direction& xi) {
  Complex s(0.0, 0.0);
  for (int m = 0; m <= e.max_degree; ++m) {
    const auto& blk = e.blocks[static_cast<std::size_t>(m)];
    for (int j = 0; j < static_cast<int>(blk.size()); ++j)
      s += blk[static_cast<std::size_t>(j)] * basis_eval(e.dim, m, j, xi);
  }
  return s;
}

Complex lambda_eigenvalue(int n, double p, int m) {
  if (!(p > 0.0 && p < n))
    throw RangeError("lambda_eigenvalue: p must lie in (0, n)");
  double mag = std::pow(2.0, p) * std::pow(pi, 0.5 * n) *
               std::tgamma(0.5 * (m + p)) / std::tgamma(0.5 * (m + n - p));
  if (m % 2 == 0) {
    double sign = (m / 2) % 2 == 0 ? 1.0 : -1.0;
    return Complex(sign * mag, 0.0);
  }
  double sign = ((m - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  return Complex(0.0, sign * mag);
}

HarmonicExpansion apply_Ip(const HarmonicExpansion& e, double p) {
  HarmonicExpansion out = e;
  for (int m = 0; m <= e.max_degree; ++m) {
    Complex lam = lambda_eigenvalue(e.dim, p, m);
    for (auto& c : out.blocks[static_cast<std::size_t>(m)]) c *= lam;
  }
  return out;
}

double gradient_norm_sq(const HarmonicExpansion& e) {
  double s = 0.0;
  for (int m = 1; m <= e.max_degree; ++m)
    s += m * (m + e.dim - 2) * e.block_norm_sq(m);
  return s;
}

}  // namespace sectionlab
