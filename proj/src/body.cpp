#include "sectionlab/body.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>

#include "sectionlab/constants.hpp"
#include "sectionlab/errors.hpp"
#include "sectionlab/harmonics.hpp"

namespace sectionlab {

namespace {

// y = M x (row-major rows).
Vec mat_vec(const std::vector<Vec>& rows, const Vec& x) {
  Vec y(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) y[i] = dot(rows[i], x);
  return y;
}

// y = M^T x.
Vec mat_tvec(const std::vector<Vec>& rows, const Vec& x) {
  Vec y(x.size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += rows[i][j] * x[i];
  return y;
}

// Body-frame coordinates scaled by the semi-axes: ||u|| <= 1 inside.
Vec ellipsoid_local(const Ellipsoid& e, const Vec& x) {
  Vec d = x - e.center;
  Vec u = e.rotation.empty() ? d : mat_tvec(e.rotation, d);
  for (std::size_t j = 0; j < u.size(); ++j) u[j] /= e.semi_axes[j];
  return u;
}

// Largest t >= 0 with t*xi inside the ellipsoid/ball written as
// |A t xi - w| = 1 in local coordinates.
double quadratic_radial(const Vec& v, const Vec& w) {
  double a = dot(v, v);
  double b = dot(v, w);
  double c = dot(w, w) - 1.0;
  double disc = b * b - a * c;
  if (disc < 0.0) throw InvalidBody("origin not interior to the body");
  return (b + std::sqrt(disc)) / a;
}

bool solve_linear(std::vector<Vec> A, Vec b, Vec& x) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t rr = col + 1; rr < n; ++rr)
      if (std::abs(A[rr][col]) > std::abs(A[piv][col])) piv = rr;
    if (std::abs(A[piv][col]) < 1e-12) return false;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t rr = 0; rr < n; ++rr) {
      if (rr == col) continue;
      double f = A[rr][col] / A[col][col];
      for (std::size_t cc = col; cc < n; ++cc) A[rr][cc] -= f * A[col][cc];
      b[rr] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
  return true;
}

const SphereQuadrature& coarse_grid(int dim) {
  static std::map<int, SphereQuadrature> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(dim);
  if (it == cache.end())
    it = cache.emplace(dim, sphere_grid(dim, dim == 2 ? 128 : 24)).first;
  return it->second;
}

}  // namespace

ConvexBodySpec ConvexBodySpec::ball(Vec center, double radius) {
  ConvexBodySpec s;
  s.dim = static_cast<int>(center.size());
  s.shape = Ball{std::move(center), radius};
  s.validate();
  return s;
}

ConvexBodySpec ConvexBodySpec::ellipsoid(Vec center, std::vector<double> semi_axes,
                                         std::vector<Vec> rotation) {
  ConvexBodySpec s;
  s.dim = static_cast<int>(center.size());
  s.shape = Ellipsoid{std::move(center), std::move(semi_axes), std::move(rotation)};
  s.validate();
  return s;
}

ConvexBodySpec ConvexBodySpec::polytope(std::vector<Halfspace> facets) {
  ConvexBodySpec s;
  if (facets.empty()) throw InvalidBody("polytope needs at least one facet");
  s.dim = static_cast<int>(facets.front().normal.size());
  for (auto& f : facets) f.normal = normalized(f.normal);
  s.shape = Polytope{std::move(facets)};
  s.validate();
  return s;
}

ConvexBodySpec ConvexBodySpec::cube(int dim, double half_side, Vec shift) {
  if (shift.empty()) shift.assign(static_cast<std::size_t>(dim), 0.0);
  std::vector<Halfspace> facets;
  for (int k = 0; k < dim; ++k) {
    for (int sgn : {-1, 1}) {
      Vec nrm = unit_axis(dim, k);
      if (sgn < 0) nrm = -nrm;
      facets.push_back(Halfspace{nrm, half_side + dot(nrm, shift)});
    }
  }
  return polytope(std::move(facets));
}

ConvexBodySpec ConvexBodySpec::radial_series(int dim, double base_radius,
                                             std::vector<HarmonicTerm> terms) {
  ConvexBodySpec s;
  s.dim = dim;
  s.shape = RadialSeries{base_radius, std::move(terms)};
  s.validate();
  return s;
}

void ConvexBodySpec::validate() const {
  if (dim < 2) throw InvalidBody("bodies must have dimension >= 2");
  if (const auto* b = std::get_if<Ball>(&shape)) {
    if (b->radius <= 0.0) throw InvalidBody("ball radius must be positive");
    if (norm(b->center) >= b->radius)
      throw InvalidBody("ball must contain the origin strictly");
  } else if (const auto* e = std::get_if<Ellipsoid>(&shape)) {
    if (static_cast<int>(e->semi_axes.size()) != dim)
      throw InvalidBody("ellipsoid semi-axes count must match the dimension");
    for (double a : e->semi_axes)
      if (a <= 0.0) throw InvalidBody("ellipsoid semi-axes must be positive");
    if (norm(ellipsoid_local(*e, Vec(static_cast<std::size_t>(dim), 0.0))) >= 1.0)
      throw InvalidBody("ellipsoid must contain the origin strictly");
  } else if (const auto* p = std::get_if<Polytope>(&shape)) {
    for (const auto& f : p->facets) {
      if (f.offset <= 0.0)
        throw InvalidBody("polytope offsets must be positive (origin interior)");
      if (std::abs(norm(f.normal) - 1.0) > 1e-9)
        throw InvalidBody("polytope normals must be unit vectors");
    }
  } else if (const auto* rs = std::get_if<RadialSeries>(&shape)) {
    if (rs->base_radius <= 0.0)
      throw InvalidBody("radial_series base radius must be positive");
    double sup = 0.0;
    for (const auto& node : sphere_grid(dim, dim == 2 ? 128 : 16).nodes) {
      double pert = 0.0;
      for (const auto& t : rs->terms)
        pert += t.coeff * basis_eval(dim, t.degree, t.index, node);
      sup = std::max(sup, std::abs(pert));
    }
    if (sup >= rs->base_radius)
      throw InvalidBody("radial_series perturbation sup-norm must stay below the base radius");
  }
}

double spec_radial(const ConvexBodySpec& spec, const Direction& xi) {
  if (xi.dim() != spec.dim) throw DimError("spec_radial: dimension mismatch");
  if (const auto* b = std::get_if<Ball>(&spec.shape)) {
    return quadratic_radial((1.0 / b->radius) * xi.coords(),
                            (1.0 / b->radius) * b->center);
  }
  if (const auto* e = std::get_if<Ellipsoid>(&spec.shape)) {
    Vec v = e->rotation.empty() ? xi.coords() : mat_tvec(e->rotation, xi.coords());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] /= e->semi_axes[j];
    Vec w = ellipsoid_local(*e, Vec(static_cast<std::size_t>(spec.dim), 0.0));
    return quadratic_radial(v, -w);
  }
  if (const auto* p = std::get_if<Polytope>(&spec.shape)) {
    double best = -1.0;
    for (const auto& f : p->facets) {
      double den = dot(f.normal, xi);
      if (den > 1e-14) {
        double t = f.offset / den;
        if (best < 0.0 || t < best) best = t;
      }
    }
    if (best < 0.0) throw InvalidBody("unbounded polytope in the queried direction");
    return best;
  }
  const auto& rs = std::get<RadialSeries>(spec.shape);
  double rho = rs.base_radius;
  for (const auto& t : rs.terms)
    rho += t.coeff * basis_eval(spec.dim, t.degree, t.index, xi);
  if (rho <= 0.0) throw InvalidBody("radial_series radial function is not positive");
  return rho;
}

std::vector<Vec> polytope_vertices(const Polytope& poly, int dim) {
  const int f = static_cast<int>(poly.facets.size());
  if (dim > 4 || f > 64)
    throw RangeError("vertex enumeration limited to n <= 4 and <= 64 facets");
  std::vector<Vec> verts;
  std::vector<int> idx(static_cast<std::size_t>(dim));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == dim) {
      std::vector<Vec> A;
      Vec b;
      for (int k = 0; k < dim; ++k) {
        A.push_back(poly.facets[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])].normal);
        b.push_back(poly.facets[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])].offset);
      }
      Vec v;
      if (!solve_linear(A, b, v)) return;
      for (const auto& fc : poly.facets)
        if (dot(fc.normal, v) > fc.offset + 1e-9) return;
      for (const auto& u : verts)
        if (norm(u - v) < 1e-9) return;
      verts.push_back(v);
      return;
    }
    for (int i = start; i < f; ++i) {
      idx[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return verts;
}

double sphere_support_max(int dim, const StarBody::RadialFn& radial,
                          const Direction& xi) {
  auto score = [&](const Direction& eta) { return radial(eta) * dot(eta, xi); };
  const SphereQuadrature& grid = coarse_grid(dim);
  double best = -1e300;
  Vec eta = xi.coords();
  for (const auto& node : grid.nodes) {
    double s = score(node);
    if (s > best) {
      best = s;
      eta = node.coords();
    }
  }
  // Pattern search on the sphere from the best grid node.
  double step = 0.2;
  while (step > 1e-10) {
    bool moved = false;
    for (int k = 0; k < dim; ++k) {
      for (int sgn : {-1, 1}) {
        Vec cand = eta;
        cand[static_cast<std::size_t>(k)] += sgn * step;
        Direction d(cand);
        double s = score(d);
        if (s > best + 1e-16 * std::abs(best)) {
          best = s;
          eta = d.coords();
          moved = true;
        }
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

SupportEvaluator::SupportEvaluator(ConvexBodySpec spec) : spec_(std::move(spec)) {
  if (const auto* p = std::get_if<Polytope>(&spec_.shape)) {
    if (spec_.dim <= 4 && p->facets.size() <= 64)
      vertices_ = polytope_vertices(*p, spec_.dim);
  }
}

double SupportEvaluator::operator()(const Direction& xi) const {
  if (xi.dim() != spec_.dim) throw DimError("support: dimension mismatch");
  if (const auto* b = std::get_if<Ball>(&spec_.shape))
    return dot(b->center, xi) + b->radius;
  if (const auto* e = std::get_if<Ellipsoid>(&spec_.shape)) {
    Vec v = e->rotation.empty() ? xi.coords() : mat_tvec(e->rotation, xi.coords());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] *= e->semi_axes[j];
    return dot(e->center, xi) + norm(v);
  }
  if (std::get_if<Polytope>(&spec_.shape)) {
    if (!vertices_.empty()) {
      double best = -1e300;
      for (const auto& v : vertices_) best = std::max(best, dot(v, xi));
      return best;
    }
    // Large instances fall back to the sphere search over the radial map.
    const ConvexBodySpec& s = spec_;
    return sphere_support_max(
        spec_.dim, [&s](const Direction& d) { return spec_radial(s, d); }, xi);
  }
  const ConvexBodySpec& s = spec_;
  return sphere_support_max(
      spec_.dim, [&s](const Direction& d) { return spec_radial(s, d); }, xi);
}

double spec_support(const ConvexBodySpec& spec, const Direction& xi) {
  return SupportEvaluator(spec)(xi);
}

bool spec_contains(const ConvexBodySpec& spec, const Vec& x, double slack) {
  if (const auto* b = std::get_if<Ball>(&spec.shape))
    return norm(x - b->center) <= b->radius + slack;
  if (const auto* e = std::get_if<Ellipsoid>(&spec.shape))
    return norm(ellipsoid_local(*e, x)) <= 1.0 + slack;
  if (const auto* p = std::get_if<Polytope>(&spec.shape)) {
    for (const auto& f : p->facets)
      if (dot(f.normal, x) > f.offset + slack) return false;
    return true;
  }
  double nx = norm(x);
  if (nx == 0.0) return true;
  return nx <= spec_radial(spec, Direction((1.0 / nx) * x)) + slack;
}

void certify_convex(const ConvexBodySpec& spec, unsigned seed, int chords) {
  if (!std::holds_alternative<RadialSeries>(spec.shape)) return;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_dir = [&]() {
    Vec v(static_cast<std::size_t>(spec.dim));
    for (auto& c : v) c = gauss(rng);
    return Direction(v);
  };
  for (int i = 0; i < chords; ++i) {
    Direction a = random_dir();
    Direction b = random_dir();
    Vec x = spec_radial(spec, a) * a.coords();
    Vec y = spec_radial(spec, b) * b.coords();
    Vec mid = 0.5 * (x + y);
    if (!spec_contains(spec, mid, 1e-9))
      throw InvalidBody("radial_series spec fails the convexity certificate");
  }
}

StarBody::StarBody(int dim, RadialFn radial, double inner_radius,
                   double outer_radius, Smoothness smoothness)
    : dim_(dim),
      radial_(std::move(radial)),
      r_(inner_radius),
      R_(outer_radius),
      smooth_(smoothness) {
  if (dim < 2) throw InvalidBody("star body dimension must be >= 2");
  if (!(r_ > 0.0) || !(R_ >= r_))
    throw InvalidBody("star body needs 0 < r <= R");
}

StarBody StarBody::from_spec(const ConvexBodySpec& spec) {
  spec.validate();
  certify_convex(spec);
  double r = 0.0, R = 0.0;
  Smoothness sm = Smoothness::cinf;
  if (const auto* b = std::get_if<Ball>(&spec.shape)) {
    double c = norm(b->center);
    r = b->radius - c;
    R = b->radius + c;
  } else if (const auto* e = std::get_if<Ellipsoid>(&spec.shape)) {
    double c = norm(e->center);
    double amin = *std::min_element(e->semi_axes.begin(), e->semi_axes.end());
    double amax = *std::max_element(e->semi_axes.begin(), e->semi_axes.end());
    r = amin - c;
    R = amax + c;
    if (r <= 0.0) throw InvalidBody("shifted ellipsoid: no certified inner ball");
  } else if (const auto* p = std::get_if<Polytope>(&spec.shape)) {
    sm = Smoothness::polytope;
    r = 1e300;
    for (const auto& f : p->facets) r = std::min(r, f.offset);
    R = 0.0;
    if (spec.dim <= 4 && p->facets.size() <= 64) {
      for (const auto& v : polytope_vertices(*p, spec.dim)) R = std::max(R, norm(v));
    } else {
      for (const auto& node : coarse_grid(spec.dim).nodes)
        R = std::max(R, spec_radial(spec, node));
      R *= 1.01;
    }
  } else {
    sm = Smoothness::cinf;
    double lo = 1e300, hi = 0.0;
    for (const auto& node : coarse_grid(spec.dim).nodes) {
      double rho = spec_radial(spec, node);
      lo = std::min(lo, rho);
      hi = std::max(hi, rho);
    }
    r = lo * 0.999;
    R = hi * 1.001;
  }
  ConvexBodySpec copy = spec;
  StarBody body(
      spec.dim, [copy](const Direction& xi) { return spec_radial(copy, xi); }, r, R,
      sm);
  body.spec_ = spec;
  body.support_ = std::make_shared<SupportEvaluator>(spec);
  return body;
}

bool StarBody::contains(const Vec& x, double slack) const {
  double nx = norm(x);
  if (nx == 0.0) return true;
  return nx <= radial_(Direction((1.0 / nx) * x)) + slack;
}

double StarBody::support(const Direction& xi) const {
  if (support_) return (*support_)(xi);
  return sphere_support_max(dim_, radial_, xi);
}

StarBody reflect(const StarBody& body) {
  auto rad = body.radial_;
  StarBody out(
      body.dim(), [rad](const Direction& xi) { return rad(-xi); },
      body.inner_radius(), body.outer_radius(), body.smoothness());
  if (body.spec_) {
    if (const auto* b = std::get_if<Ball>(&body.spec_->shape)) {
      out.spec_ = ConvexBodySpec::ball(-b->center, b->radius);
      out.support_ = std::make_shared<SupportEvaluator>(*out.spec_);
    } else if (const auto* e = std::get_if<Ellipsoid>(&body.spec_->shape)) {
      out.spec_ = ConvexBodySpec::ellipsoid(-e->center, e->semi_axes, e->rotation);
      out.support_ = std::make_shared<SupportEvaluator>(*out.spec_);
    } else if (const auto* p = std::get_if<Polytope>(&body.spec_->shape)) {
      Polytope q = *p;
      for (auto& f : q.facets) f.normal = -f.normal;
      out.spec_ = ConvexBodySpec::polytope(q.facets);
      out.support_ = std::make_shared<SupportEvaluator>(*out.spec_);
    }
  }
  return out;
}

StarBody mollify(const StarBody& body, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw RangeError("mollify: delta must lie in (0, 1)");

  const int n = body.dim();
  // Shell quadrature: Gauss-Legendre in the radius, sphere grid in the
  // direction.  The bump is c*exp(-1/(1-v^2)) rescaled to [delta/2, delta].
  std::vector<double> gx, gw;
  gauss_legendre(16, gx, gw);
  SphereQuadrature shell = sphere_grid(n, n == 2 ? 64 : 20);

  const double a = delta / 2.0, b = delta;
  std::vector<double> s(gx.size()), phi(gx.size());
  double mass = 0.0;
  for (std::size_t i = 0; i < gx.size(); ++i) {
    s[i] = 0.5 * (a + b) + 0.5 * (b - a) * gx[i];
    double v = gx[i];
    phi[i] = std::abs(v) < 1.0 ? std::exp(-1.0 / (1.0 - v * v)) : 0.0;
    mass += gw[i] * 0.5 * (b - a) * std::pow(s[i], n - 1) * phi[i];
  }
  double total = mass * omega_n(n);

  auto cache = std::make_shared<std::map<std::vector<long long>, double>>();
  auto mtx = std::make_shared<std::mutex>();
  auto rad = [bcopy = body](const Direction& d) { return bcopy.radial(d); };
  auto gauge = [=](const Direction& xi) {
    std::vector<long long> key(xi.coords().size());
    for (std::size_t k = 0; k < key.size(); ++k)
      key[k] = static_cast<long long>(std::llround(xi[k] * 1e14));
    {
      std::lock_guard<std::mutex> lock(*mtx);
      auto it = cache->find(key);
      if (it != cache->end()) return it->second;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      double wr = gw[i] * 0.5 * (b - a) * std::pow(s[i], n - 1) * phi[i];
      for (std::size_t j = 0; j < shell.size(); ++j) {
        Vec y = xi.coords() + s[i] * shell.nodes[j].coords();
        double ny = norm(y);
        acc += wr * shell.weights[j] * ny / rad(Direction((1.0 / ny) * y));
      }
    }
    double g = acc / total;
    std::lock_guard<std::mutex> lock(*mtx);
    (*cache)[key] = g;
    return g;
  };

  double r_out = body.inner_radius() / (1.0 + delta);
  double R_out = body.outer_radius() / (1.0 - delta);
  return StarBody(
      n, [gauge](const Direction& xi) { return 1.0 / gauge(xi); }, r_out, R_out,
      Smoothness::cinf);
}

}  // namespace sectionlab
