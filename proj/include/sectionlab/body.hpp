#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "sectionlab/quadrature.hpp"
#include "sectionlab/vec.hpp"

namespace sectionlab {

enum class Smoothness { polytope, c0, cm, cinf };

struct Ball {
  Vec center;
  double radius = 1.0;
};

struct Ellipsoid {
  Vec center;
  std::vector<double> semi_axes;
  // Rotation matrix, row-major; empty means identity.  Columns are the
  // principal axes expressed in world coordinates.
  std::vector<Vec> rotation;
};

struct Halfspace {
  Vec normal;  // unit
  double offset = 1.0;  // > 0 so the origin is interior
};

struct Polytope {
  std::vector<Halfspace> facets;
};

struct HarmonicTerm {
  int degree = 0;
  int index = 0;
  double coeff = 0.0;
};

// base_radius plus a finite spherical-harmonic perturbation of the radial
// function.
struct RadialSeries {
  double base_radius = 1.0;
  std::vector<HarmonicTerm> terms;
};

struct ConvexBodySpec {
  int dim = 0;
  std::variant<Ball, Ellipsoid, Polytope, RadialSeries> shape;

  static ConvexBodySpec ball(Vec center, double radius);
  static ConvexBodySpec ellipsoid(Vec center, std::vector<double> semi_axes,
                                  std::vector<Vec> rotation = {});
  static ConvexBodySpec polytope(std::vector<Halfspace> facets);
  static ConvexBodySpec cube(int dim, double half_side = 1.0, Vec shift = {});
  static ConvexBodySpec radial_series(int dim, double base_radius,
                                      std::vector<HarmonicTerm> terms);

  void validate() const;  // origin-interior checks; throws InvalidBody
};

// Radial function of a spec body.
double spec_radial(const ConvexBodySpec& spec, const Direction& xi);

// Support function of a spec body (closed form for balls/ellipsoids, vertex
// maximum for small polytopes, sphere search otherwise).
double spec_support(const ConvexBodySpec& spec, const Direction& xi);

bool spec_contains(const ConvexBodySpec& spec, const Vec& x, double slack = 0.0);

// Vertices of a polytope by facet-subset enumeration (n <= 4, <= 64 facets).
std::vector<Vec> polytope_vertices(const Polytope& poly, int dim);

// Midpoint test on random chords; throws InvalidBody when a radial_series
// spec fails it.  No-op for the intrinsically convex variants.
void certify_convex(const ConvexBodySpec& spec, unsigned seed = 12345,
                    int chords = 10000);

// Caches whatever the support evaluation needs (polytope vertices in
// particular) so repeated queries are cheap.
class SupportEvaluator {
 public:
  explicit SupportEvaluator(ConvexBodySpec spec);
  double operator()(const Direction& xi) const;
  const ConvexBodySpec& spec() const { return spec_; }

 private:
  ConvexBodySpec spec_;
  std::vector<Vec> vertices_;  // polytope only
};

// Star body with a radial oracle and certified inner/outer radii.
class StarBody {
 public:
  using RadialFn = std::function<double(const Direction&)>;
  using SupportFn = std::function<double(const Direction&)>;

  StarBody(int dim, RadialFn radial, double inner_radius, double outer_radius,
           Smoothness smoothness);

  static StarBody from_spec(const ConvexBodySpec& spec);

  int dim() const { return dim_; }
  double radial(const Direction& xi) const { return radial_(xi); }
  double inner_radius() const { return r_; }
  double outer_radius() const { return R_; }
  Smoothness smoothness() const { return smooth_; }
  const std::optional<ConvexBodySpec>& spec() const { return spec_; }

  bool contains(const Vec& x, double slack = 0.0) const;

  // h_K(xi); closed form when a spec is attached, sphere search otherwise.
  double support(const Direction& xi) const;

 private:
  int dim_;
  RadialFn radial_;
  double r_, R_;
  Smoothness smooth_;
  std::optional<ConvexBodySpec> spec_;
  std::shared_ptr<SupportEvaluator> support_;

  friend StarBody reflect(const StarBody& body);
};

// -K: radial of the output at xi equals radial of the input at -xi.
StarBody reflect(const StarBody& body);

// Smooth approximant K_delta whose gauge averages the gauge of K over a
// spherical shell of radii [delta/2, delta].  Certified radii follow the
// containment sandwich B_{r/(1+delta)} subset K_delta subset B_{R/(1-delta)}.
StarBody mollify(const StarBody& body, double delta);

// Generic support maximum max_eta rho(eta) <eta, xi> over the sphere.
double sphere_support_max(int dim, const StarBody::RadialFn& radial,
                          const Direction& xi);

}  // namespace sectionlab
