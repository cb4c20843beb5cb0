#include "sectionlab/sections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <random>

#include "sectionlab/constants.hpp"
#include "sectionlab/errors.hpp"
#include "sectionlab/parallel.hpp"

namespace sectionlab {

std::vector<Vec> householder_frame(const Direction& xi) {
  const int n = xi.dim();
  Vec v = xi.coords();
  v[static_cast<std::size_t>(n - 1)] -= 1.0;  // v = xi - e_n
  double vv = dot(v, v);
  std::vector<Vec> frame;
  frame.reserve(static_cast<std::size_t>(n - 1));
  for (int k = 0; k < n - 1; ++k) {
    Vec u = unit_axis(n, k);
    if (vv > 1e-30) {
      double f = 2.0 * v[static_cast<std::size_t>(k)] / vv;
      for (std::size_t j = 0; j < u.size(); ++j) u[j] -= f * v[j];
    }
    frame.push_back(std::move(u));
  }
  return frame;
}

namespace {

// Exit distance from an interior point along a unit direction, by bisection
// on membership.
double ray_exit(const StarBody& K, const Vec& origin_pt, const Vec& dir) {
  const double R = K.outer_radius();
  if (!K.contains(origin_pt, 1e-12 * R)) return 0.0;
  double lo = 0.0, hi = 2.0 * R + norm(origin_pt);
  const double tol = 1e-12 * R;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (K.contains(origin_pt + mid * dir))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Interior point of K on the hyperplane <x, xi> = t.  Uses t*xi when that
// point is inside K; otherwise walks along the segment to a support
// maximizer on the t-side.
bool slab_center(const StarBody& K, const Direction& xi, double t, Vec& center) {
  const int n = K.dim();
  Vec c = t * xi.coords();
  if (K.contains(c, 1e-13 * K.outer_radius())) {
    center = std::move(c);
    return true;
  }
  Direction side = t >= 0.0 ? xi : -xi;
  // Pattern-search maximizer of rho(eta)<eta, side>.
  const SphereQuadrature grid = sphere_grid(n, n == 2 ? 128 : 20);
  double best = -1e300;
  Vec eta = side.coords();
  for (const auto& node : grid.nodes) {
    double s = K.radial(node) * dot(node, side);
    if (s > best) {
      best = s;
      eta = node.coords();
    }
  }
  double step = 0.2;
  while (step > 1e-11) {
    bool moved = false;
    for (int k = 0; k < n; ++k) {
      for (int sgn : {-1, 1}) {
        Vec cand = eta;
        cand[static_cast<std::size_t>(k)] += sgn * step;
        Direction d(cand);
        double s = K.radial(d) * dot(d, side);
        if (s > best) {
          best = s;
          eta = d.coords();
          moved = true;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  Direction etad(eta);
  Vec x = K.radial(etad) * etad.coords();
  double proj = dot(x, xi);
  if (std::abs(proj) < std::abs(t) || proj * t < 0.0) return false;
  center = (t / proj) * x;
  return true;
}

}  // namespace

double slice_radial(const StarBody& K, const Direction& xi, double t,
                    const Direction& theta) {
  if (xi.dim() != K.dim() || theta.dim() != K.dim())
    throw DimError("slice_radial: dimension mismatch");
  if (std::abs(dot(theta, xi)) > 1e-12)
    throw FrameError("slice_radial: theta must be orthogonal to xi");
  double hp = K.support(xi), hm = K.support(-xi);
  if (t >= hp || t <= -hm) return 0.0;
  return ray_exit(K, t * xi.coords(), theta.coords());
}

double parallel_section(const StarBody& K, const Direction& xi, double t,
                        const SphereQuadrature& quad_sub) {
  const int n = K.dim();
  if (xi.dim() != n) throw DimError("parallel_section: dimension mismatch");
  if (n >= 3 && quad_sub.dim != n - 1)
    throw DimError("parallel_section: quad_sub must live on S^{n-2}");

  double hp = K.support(xi), hm = K.support(-xi);
  if (t >= hp - 1e-13 * K.outer_radius() || t <= -hm + 1e-13 * K.outer_radius())
    return 0.0;

  Vec center;
  if (!slab_center(K, xi, t, center)) return 0.0;

  std::vector<Vec> frame = householder_frame(xi);
  if (n == 2) {
    return ray_exit(K, center, frame[0]) + ray_exit(K, center, -frame[0]);
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < quad_sub.size(); ++j) {
    Vec theta(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n - 1; ++k) {
      double comp = quad_sub.nodes[j][static_cast<std::size_t>(k)];
      for (std::size_t d = 0; d < theta.size(); ++d)
        theta[d] += comp * frame[static_cast<std::size_t>(k)][d];
    }
    double rho = ray_exit(K, center, theta);
    acc += quad_sub.weights[j] * std::pow(rho, n - 1);
  }
  return acc / (n - 1);
}

DerivativeEstimate section_derivative(const StarBody& K, const Direction& xi,
                                      double t, int k,
                                      const SphereQuadrature& quad_sub,
                                      double step) {
  if (k != 1 && k != 2)
    throw RangeError("section_derivative: order must be 1 or 2");
  const double R = K.outer_radius();
  double h = step > 0.0
                 ? step
                 : std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (k + 2)) * R;
  double hp = K.support(xi), hm = K.support(-xi);
  if (t + h >= hp || t - h <= -hm)
    throw BoundaryError("section_derivative: t too close to the support boundary");

  auto A = [&](double s) { return parallel_section(K, xi, s, quad_sub); };
  auto fd = [&](double hh) {
    if (k == 1) return (A(t + hh) - A(t - hh)) / (2.0 * hh);
    return (A(t + hh) - 2.0 * A(t) + A(t - hh)) / (hh * hh);
  };
  double d1 = fd(h);
  double d2 = fd(0.5 * h);
  DerivativeEstimate out;
  out.value = (4.0 * d2 - d1) / 3.0;
  out.error = std::abs(d2 - d1) / 3.0;
  return out;
}

double prime_at_zero_2d(const StarBody& K, double theta) {
  if (K.dim() != 2) throw DimError("prime_at_zero_2d: requires n = 2");
  if (K.smoothness() == Smoothness::polytope || K.smoothness() == Smoothness::c0)
    throw SmoothnessError("prime_at_zero_2d: radial function must be C^1; mollify first");

  auto rho = [&](double ang) { return K.radial(Direction::angle2d(ang)); };
  auto drho = [&](double ang) {
    const double h = 1e-5;
    double d1 = (rho(ang + h) - rho(ang - h)) / (2.0 * h);
    double d2 = (rho(ang + 0.5 * h) - rho(ang - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
  };
  double up = theta + 0.5 * pi, dn = theta - 0.5 * pi;
  return -drho(up) / rho(up) + drho(dn) / rho(dn);
}

MaxSection max_section(const StarBody& K, const Direction& xi,
                       const SphereQuadrature& quad_sub) {
  const int n = K.dim();
  double hp = K.support(xi), hm = K.support(-xi);
  const double R = K.outer_radius();
  auto A = [&](double t) { return parallel_section(K, xi, t, quad_sub); };
  auto g = [&](double t) {
    return std::pow(std::max(0.0, A(t)), 1.0 / (n - 1));
  };

  // Golden-section maximization of the Brunn-concave root.
  double a = -hm, b = hp;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double gc = g(c), gd = g(d);
  while (b - a > 1e-10 * R) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - gr * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + gr * (b - a);
      gd = g(d);
    }
  }
  double t0 = 0.5 * (a + b);
  double m = A(t0);

  // Plateau rule: move the reported maximizer to the plateau point closest
  // to zero, resolved to 1e-4 * R.
  const double ptol = 1e-12 * std::max(1.0, m);
  const double res = 1e-4 * R;
  MaxSection out{m, t0};
  if (std::abs(t0) > res) {
    double sgn = t0 > 0.0 ? 1.0 : -1.0;
    if (A(0.0) >= m - ptol) {
      out.t_star = 0.0;
    } else {
      double lo = 0.0, hi = std::abs(t0);
      while (hi - lo > res) {
        double mid = 0.5 * (lo + hi);
        if (A(sgn * mid) >= m - ptol)
          hi = mid;
        else
          lo = mid;
      }
      out.t_star = sgn * hi;
    }
  }
  return out;
}

namespace {

StarBody tabulated_body(const StarBody& K, const SphereQuadrature& quad,
                        std::function<double(const StarBody&, const Direction&)> eval) {
  auto cache = std::make_shared<std::map<std::vector<long long>, double>>();
  auto mtx = std::make_shared<std::mutex>();
  auto Kc = std::make_shared<StarBody>(K);
  auto oracle = [cache, mtx, Kc, eval](const Direction& xi) {
    std::vector<long long> key(xi.coords().size());
    for (std::size_t k = 0; k < key.size(); ++k)
      key[k] = static_cast<long long>(std::llround(xi[k] * 1e14));
    {
      std::lock_guard<std::mutex> lock(*mtx);
      auto it = cache->find(key);
      if (it != cache->end()) return it->second;
    }
    double v = eval(*Kc, xi);
    std::lock_guard<std::mutex> lock(*mtx);
    (*cache)[key] = v;
    return v;
  };
  std::vector<double> vals(quad.size());
  parallel_for(quad.size(), [&](std::size_t i) { vals[i] = oracle(quad.nodes[i]); });
  double lo = 1e300, hi = 0.0;
  for (double v : vals) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo > 0.0)) throw InvalidBody("tabulated radial function is not positive");
  return StarBody(K.dim(), oracle, lo, hi, Smoothness::c0);
}

}  // namespace

StarBody intersection_body(const StarBody& K, const SphereQuadrature& quad) {
  const int n = K.dim();
  auto sub = std::make_shared<SphereQuadrature>(
      n >= 3 ? sphere_grid(n - 1, std::max(quad.order, 16)) : SphereQuadrature{});
  return tabulated_body(K, quad, [sub](const StarBody& body, const Direction& xi) {
    return parallel_section(body, xi, 0.0, *sub);
  });
}

StarBody cross_section_body(const StarBody& K, const SphereQuadrature& quad) {
  const int n = K.dim();
  auto sub = std::make_shared<SphereQuadrature>(
      n >= 3 ? sphere_grid(n - 1, std::max(quad.order, 16)) : SphereQuadrature{});
  return tabulated_body(K, quad, [sub](const StarBody& body, const Direction& xi) {
    return max_section(body, xi, *sub).m;
  });
}

double averaged_section(const StarBody& K, double t, const SphereQuadrature& quad,
                        AveragedRoute route) {
  const int n = K.dim();
  if (route == AveragedRoute::definition) {
    SphereQuadrature sub =
        n >= 3 ? sphere_grid(n - 1, std::max(quad.order, 16)) : SphereQuadrature{};
    std::vector<double> vals(quad.size());
    parallel_for(quad.size(), [&](std::size_t i) {
      vals[i] = parallel_section(K, quad.nodes[i], t, sub);
    });
    double acc = 0.0;
    for (std::size_t i = 0; i < quad.size(); ++i) acc += quad.weights[i] * vals[i];
    return acc / omega_n(n);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    double rho = K.radial(quad.nodes[i]);
    double v = std::max(rho * rho - t * t, 0.0);
    acc += quad.weights[i] * std::pow(v, 0.5 * (n - 1));
  }
  return averaged_section_constant(n) / (n - 1) * acc;
}

double averaged_section_derivative(const StarBody& K, double t,
                                   const SphereQuadrature& quad) {
  const int n = K.dim();
  double acc = 0.0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    double rho = K.radial(quad.nodes[i]);
    double v = std::max(rho * rho - t * t, 0.0);
    acc += quad.weights[i] * std::pow(v, 0.5 * (n - 3));
  }
  return -averaged_section_constant(n) * t * acc;
}

LipschitzAudit lipschitz_audit(const StarBody& K, const SphereQuadrature& quad,
                               int samples, unsigned seed) {
  const int n = K.dim();
  const double r = K.inner_radius(), R = K.outer_radius();
  SphereQuadrature sub =
      n >= 3 ? sphere_grid(n - 1, 32) : SphereQuadrature{};

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-0.5 * r, 0.5 * r);

  LipschitzAudit out;
  out.bound = lipschitz_L(n) * std::pow(R, n - 1) / r;
  for (int i = 0; i < samples; ++i) {
    const Direction& xi = quad.nodes[static_cast<std::size_t>(i) % quad.size()];
    double s = uni(rng), t = uni(rng);
    if (std::abs(t - s) < 1e-3 * r) continue;
    double ratio = std::abs(parallel_section(K, xi, t, sub) -
                            parallel_section(K, xi, s, sub)) /
                   std::abs(t - s);
    out.max_ratio = std::max(out.max_ratio, ratio);
  }
  out.holds = out.max_ratio <= out.bound;
  return out;
}

SectionProfile section_profile(const StarBody& K, const Direction& xi,
                               int points, const SphereQuadrature& quad_sub) {
  const int n = K.dim();
  double hp = K.support(xi), hm = K.support(-xi);
  SectionProfile prof{xi, {}, {}, {}, {}, -hm, hp};
  double lo = -0.99 * hm, hi = 0.99 * hp;
  prof.t_grid.resize(static_cast<std::size_t>(points));
  prof.values.resize(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    double t = lo + (hi - lo) * i / (points - 1);
    prof.t_grid[static_cast<std::size_t>(i)] = t;
    prof.values[static_cast<std::size_t>(i)] = parallel_section(K, xi, t, quad_sub);
  }
  prof.derivatives.assign(static_cast<std::size_t>(points), 0.0);
  double dt = (hi - lo) / (points - 1);
  for (int i = 1; i < points - 1; ++i)
    prof.derivatives[static_cast<std::size_t>(i)] =
        (prof.values[static_cast<std::size_t>(i + 1)] -
         prof.values[static_cast<std::size_t>(i - 1)]) /
        (2.0 * dt);
  prof.concavity_residuals.assign(static_cast<std::size_t>(points), 0.0);
  auto root = [&](double v) { return std::pow(std::max(v, 0.0), 1.0 / (n - 1)); };
  for (int i = 1; i < points - 1; ++i)
    prof.concavity_residuals[static_cast<std::size_t>(i)] =
        root(prof.values[static_cast<std::size_t>(i)]) -
        0.5 * (root(prof.values[static_cast<std::size_t>(i - 1)]) +
               root(prof.values[static_cast<std::size_t>(i + 1)]));
  return prof;
}

}  // namespace sectionlab
