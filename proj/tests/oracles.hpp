// Independent reference computations used as test oracles.  These routes
// deliberately avoid the library's production code paths: ray-marching
// instead of bisection, Monte-Carlo slabs instead of polar integration,
// dyadic refinement instead of tanh-sinh, dense scans instead of golden
// section.
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "sectionlab/body.hpp"
#include "sectionlab/harmonics.hpp"
#include "sectionlab/quadrature.hpp"
#include "sectionlab/vec.hpp"

namespace oracles {

using sectionlab::Direction;
using sectionlab::StarBody;
using sectionlab::Vec;
// Vec is an alias of std::vector<double>, so its operators are not found by
// argument-dependent lookup outside namespace sectionlab.
using sectionlab::operator+;
using sectionlab::operator-;
using sectionlab::operator*;
using sectionlab::dot;
using sectionlab::norm;

// Boundary distance along a ray by coarse marching plus local refinement.
inline double ray_march_radial(const std::function<bool(const Vec&)>& inside,
                               const Vec& origin, const Vec& dir, double reach) {
  const int coarse = 4000;
  double step = reach / coarse;
  double lo = 0.0;
  for (int i = 1; i <= coarse; ++i) {
    double s = i * step;
    if (!inside(origin + s * dir)) break;
    lo = s;
  }
  double hi = lo + step;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    (inside(origin + mid * dir) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// (n-1)-volume of the slice {x in K : <x, xi> = t} by Monte-Carlo slab
// volume / width, sampling a bounding box of half-side R.
inline double mc_section(const StarBody& K, const Direction& xi, double t,
                         double width, long samples, unsigned seed) {
  const int n = K.dim();
  const double R = K.outer_radius();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-R, R);
  long hits = 0;
  for (long i = 0; i < samples; ++i) {
    Vec x(static_cast<std::size_t>(n));
    for (auto& c : x) c = box(rng);
    double proj = dot(x, xi);
    if (std::abs(proj - t) > 0.5 * width) continue;
    if (K.contains(x)) ++hits;
  }
  double box_vol = std::pow(2.0 * R, n);
  return static_cast<double>(hits) / static_cast<double>(samples) * box_vol / width;
}

// Monte-Carlo volume of K.
inline double mc_volume(const StarBody& K, long samples, unsigned seed) {
  const int n = K.dim();
  const double R = K.outer_radius();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-R, R);
  long hits = 0;
  for (long i = 0; i < samples; ++i) {
    Vec x(static_cast<std::size_t>(n));
    for (auto& c : x) c = box(rng);
    if (K.contains(x)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples) *
         std::pow(2.0 * R, n);
}

// int_0^1 f(t) dt with an integrable singularity at 0: composite
// Gauss-Legendre on dyadic subintervals [2^-k-1, 2^-k].
inline double dyadic_singular_integral(const std::function<double(double)>& f,
                                       int levels = 60, int pts = 24) {
  std::vector<double> x, w;
  sectionlab::gauss_legendre(pts, x, w);
  double total = 0.0;
  double hi = 1.0;
  for (int k = 0; k < levels; ++k) {
    double lo = hi * 0.5;
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double s = 0.0;
    for (int i = 0; i < pts; ++i) s += w[i] * f(mid + half * x[i]);
    total += half * s;
    hi = lo;
  }
  return total;
}

// Dense scan maximizer of g over [a, b]; among values within `flat_tol` of
// the maximum, returns the abscissa closest to zero.
struct ScanMax {
  double value = 0.0;
  double arg = 0.0;
};
inline ScanMax dense_scan_max(const std::function<double(double)>& g, double a,
                              double b, double step, double flat_tol) {
  ScanMax best;
  best.value = -1e300;
  std::vector<double> ts, vs;
  for (double t = a; t <= b + 0.5 * step; t += step) {
    double v = g(t);
    ts.push_back(t);
    vs.push_back(v);
    if (v > best.value) best.value = v;
  }
  best.arg = 1e300;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (vs[i] >= best.value - flat_tol && std::abs(ts[i]) < std::abs(best.arg))
      best.arg = ts[i];
  }
  return best;
}

// Chord length of the shifted unit disk with center (s, 0) at abscissa u
// along e1: 2*sqrt(1 - (u - s)^2).
inline double shifted_disk_chord(double s, double u) {
  double d = 1.0 - (u - s) * (u - s);
  return d > 0.0 ? 2.0 * std::sqrt(d) : 0.0;
}

// Random convex spec with inradius >= 0.5 and circumradius <= 2: balls,
// axis-aligned ellipsoids, and small star perturbations (the latter only
// when the convexity certificate passes).
inline sectionlab::ConvexBodySpec random_convex_spec(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> axis(0.7, 1.6);
  std::uniform_real_distribution<double> shift(-0.1, 0.1);
  std::uniform_int_distribution<int> kind(0, 2);
  switch (kind(rng)) {
    case 0: {
      Vec c(static_cast<std::size_t>(n));
      for (auto& x : c) x = shift(rng);
      return sectionlab::ConvexBodySpec::ball(c, axis(rng));
    }
    case 1: {
      Vec c(static_cast<std::size_t>(n));
      for (auto& x : c) x = shift(rng);
      std::vector<double> axes(static_cast<std::size_t>(n));
      for (auto& a : axes) a = axis(rng);
      return sectionlab::ConvexBodySpec::ellipsoid(c, axes);
    }
    default: {
      std::uniform_real_distribution<double> coeff(-0.03, 0.03);
      std::vector<sectionlab::HarmonicTerm> terms;
      for (int m = 1; m <= 3; ++m) {
        for (int j = 0; j < sectionlab::harmonic_dim(n, m); ++j)
          terms.push_back({m, j, coeff(rng)});
      }
      auto spec = sectionlab::ConvexBodySpec::radial_series(n, 1.0, terms);
      try {
        sectionlab::certify_convex(spec, 7, 4000);
        return spec;
      } catch (const sectionlab::InvalidBody&) {
        return sectionlab::ConvexBodySpec::ball(Vec(static_cast<std::size_t>(n), 0.0),
                                                1.0);
      }
    }
  }
}

}  // namespace oracles
