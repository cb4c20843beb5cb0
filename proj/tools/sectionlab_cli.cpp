// Command-line front end: body-spec ingestion, command dispatch, CSV output.
//
// Exit codes: 0 success (and no "violated" verdict for `verify`);
// 2 input/spec errors; 3 numerical failures.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sectionlab/body.hpp"
#include "sectionlab/constants.hpp"
#include "sectionlab/errors.hpp"
#include "sectionlab/fractional.hpp"
#include "sectionlab/harmonics.hpp"
#include "sectionlab/metrics.hpp"
#include "sectionlab/quadrature.hpp"
#include "sectionlab/sections.hpp"
#include "sectionlab/spec_io.hpp"
#include "sectionlab/stability.hpp"

namespace sl = sectionlab;

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

struct Options {
  std::string body_path;
  std::string body2_path;
  std::vector<double> xi;
  std::vector<double> t_values;
  double p = 0.5;
  double delta = 0.0;
  int grid_order = 32;
  int max_degree = 8;
  std::string sweep;
  unsigned seed = 2024;
  std::string out_path;
  std::string theorem = "main1";
  int points = 41;
  std::string spec_out;
};

std::ostream& open_out(const Options& opt, std::ofstream& file) {
  if (opt.out_path.empty()) return std::cout;
  file.open(opt.out_path);
  if (!file) throw sl::SpecError("cannot open output file: " + opt.out_path);
  return file;
}

// Every CSV starts with commented config-echo lines for reproducibility.
void echo_config(std::ostream& os, const std::string& command, const Options& opt) {
  os << "# command=" << command << " grid_order=" << opt.grid_order
     << " max_degree=" << opt.max_degree << " seed=" << opt.seed;
  if (!opt.body_path.empty()) os << " body=" << opt.body_path;
  if (!opt.body2_path.empty()) os << " body2=" << opt.body2_path;
  if (opt.delta > 0.0) os << " delta=" << opt.delta;
  os << "\n";
}

sl::StarBody load_body(const std::string& path, double delta) {
  sl::ConvexBodySpec spec = sl::read_body_spec(path);
  spec.validate();
  sl::StarBody body = sl::StarBody::from_spec(spec);
  if (delta > 0.0) body = sl::mollify(body, delta);
  return body;
}

sl::Direction parse_xi(const Options& opt, int dim) {
  if (opt.xi.empty()) return sl::Direction::axis(dim, dim - 1);
  if (static_cast<int>(opt.xi.size()) != dim)
    throw sl::DimError("--xi has the wrong number of components");
  return sl::Direction(opt.xi);
}

int cmd_section(const Options& opt) {
  sl::StarBody K = load_body(opt.body_path, opt.delta);
  sl::Direction xi = parse_xi(opt, K.dim());
  sl::SphereQuadrature sub =
      K.dim() >= 3 ? sl::sphere_grid(K.dim() - 1, opt.grid_order)
                   : sl::SphereQuadrature{};
  std::ofstream file;
  std::ostream& os = open_out(opt, file);
  echo_config(os, "section", opt);
  os << "t,A,Aprime,concavity_residual\n";
  if (!opt.t_values.empty()) {
    for (double t : opt.t_values) {
      double A = sl::parallel_section(K, xi, t, sub);
      double Ap = 0.0;
      try {
        Ap = sl::section_derivative(K, xi, t, 1, sub).value;
      } catch (const sl::BoundaryError&) {
      }
      os << fmt(t) << "," << fmt(A) << "," << fmt(Ap) << ",0\n";
    }
    return 0;
  }
  sl::SectionProfile prof = sl::section_profile(K, xi, opt.points, sub);
  for (std::size_t i = 0; i < prof.t_grid.size(); ++i) {
    os << fmt(prof.t_grid[i]) << "," << fmt(prof.values[i]) << ","
       << fmt(prof.derivatives[i]) << "," << fmt(prof.concavity_residuals[i])
       << "\n";
  }
  return 0;
}

void write_report(std::ostream& os, const sl::StabilityReport& rep) {
  os << rep.theorem << "," << fmt(rep.epsilon) << "," << fmt(rep.distance) << ","
     << (rep.bound_value ? fmt(*rep.bound_value) : std::string("")) << ","
     << fmt(rep.exponent_expected) << "," << fmt(rep.exponent_fitted) << ","
     << sl::verdict_name(rep.verdict) << "," << rep.grid_order << ",\""
     << rep.note << "\"\n";
}

int cmd_verify(const Options& opt) {
  std::ofstream file;
  std::ostream& os = open_out(opt, file);
  echo_config(os, "verify", opt);
  os << "theorem,epsilon,distance,bound,q_expected,q_fitted,verdict,grid_order,"
        "note\n";

  std::vector<sl::StabilityReport> reports;
  if (!opt.sweep.empty()) {
    // Built-in families with independently known epsilon/distance scaling.
    std::vector<double> eps, dist;
    if (opt.sweep == "shifted-ball") {
      sl::SphereQuadrature quad = sl::sphere_grid(3, opt.grid_order);
      for (double s : {1e-3, 3e-3, 1e-2, 3e-2, 1e-1}) {
        sl::StarBody K = sl::StarBody::from_spec(
            sl::ConvexBodySpec::ball(sl::Vec{s, 0.0, 0.0}, 1.0));
        sl::StabilityReport rep = sl::verify_main1(K, quad);
        rep.note = "shift=" + fmt(s);
        eps.push_back(rep.epsilon);
        dist.push_back(rep.distance);
        reports.push_back(rep);
      }
    } else if (opt.sweep == "shifted-disk") {
      sl::SphereQuadrature quad = sl::sphere_grid(2, opt.grid_order);
      for (double s : {1e-3, 3e-3, 1e-2, 3e-2, 1e-1}) {
        sl::StarBody K = sl::StarBody::from_spec(
            sl::ConvexBodySpec::ball(sl::Vec{s, 0.0}, 1.0));
        sl::StabilityReport rep = sl::verify_main1(K, quad);
        rep.note = "shift=" + fmt(s);
        eps.push_back(rep.epsilon);
        dist.push_back(rep.distance);
        reports.push_back(rep);
      }
    } else if (opt.sweep == "dilated-ball") {
      sl::SphereQuadrature quad = sl::sphere_grid(3, opt.grid_order);
      sl::StarBody K =
          sl::StarBody::from_spec(sl::ConvexBodySpec::ball(sl::Vec{0, 0, 0}, 1.0));
      for (double d : {1e-3, 3e-3, 1e-2, 3e-2, 1e-1}) {
        sl::StarBody L = sl::StarBody::from_spec(
            sl::ConvexBodySpec::ball(sl::Vec{0, 0, 0}, 1.0 + d));
        sl::StabilityReport rep = sl::verify_main2(K, L, opt.p, quad);
        rep.note = "dilation=" + fmt(d);
        eps.push_back(rep.epsilon);
        dist.push_back(rep.distance);
        reports.push_back(rep);
      }
    } else {
      throw sl::SpecError("unknown sweep family '" + opt.sweep + "'");
    }
    sl::ExponentFit fit = sl::exponent_fit(eps, dist);
    for (auto& rep : reports) rep.exponent_fitted = fit.slope;
  } else {
    sl::StarBody K = load_body(opt.body_path, opt.delta);
    sl::SphereQuadrature quad = sl::sphere_grid(K.dim(), opt.grid_order);
    if (opt.theorem == "mmo") {
      reports.push_back(sl::verify_mmo_forward(K, quad));
    } else if (opt.theorem == "main1") {
      reports.push_back(sl::verify_main1(K, quad));
    } else if (opt.theorem == "cor1") {
      reports.push_back(sl::verify_cor1(K, quad));
    } else if (opt.theorem == "intparallel") {
      reports.push_back(sl::verify_lemma_intparallel(K, quad));
    } else if (opt.theorem == "main2") {
      if (opt.body2_path.empty())
        throw sl::SpecError("theorem main2 needs --body2");
      sl::StarBody L = load_body(opt.body2_path, opt.delta);
      reports.push_back(sl::verify_main2(K, L, opt.p, quad));
    } else if (opt.theorem == "keylemma") {
      if (opt.body2_path.empty())
        throw sl::SpecError("theorem keylemma needs --body2");
      sl::StarBody L = load_body(opt.body2_path, opt.delta);
      reports.push_back(sl::keylemma_bound(K, L, opt.p, quad, opt.max_degree));
    } else {
      throw sl::SpecError("unknown theorem tag '" + opt.theorem + "'");
    }
  }

  bool violated = false;
  for (const auto& rep : reports) {
    if (rep.verdict == sl::Verdict::gate_not_met)
      std::cerr << "warning: " << rep.theorem
                << ": hypothesis gate not met; bound not asserted\n";
    if (rep.verdict == sl::Verdict::violated) violated = true;
    write_report(os, rep);
  }
  return violated ? 1 : 0;
}

int cmd_fracderiv(const Options& opt) {
  sl::StarBody K = load_body(opt.body_path, opt.delta);
  sl::Direction xi = parse_xi(opt, K.dim());
  sl::SphereQuadrature sub =
      K.dim() >= 3 ? sl::sphere_grid(K.dim() - 1, opt.grid_order)
                   : sl::SphereQuadrature{};
  std::ofstream file;
  std::ostream& os = open_out(opt, file);
  echo_config(os, "fracderiv", opt);
  os << "p,value\n";
  std::vector<double> ps = opt.t_values.empty()
                               ? std::vector<double>{opt.p}
                               : opt.t_values;  // --t doubles as a p-list
  for (double p : ps) {
    if (sl::frac_ill_conditioned(p))
      std::cerr << "warning: p=" << p
                << " is within 1e-3 of an integer; result is ill-conditioned\n";
    double v = sl::frac_section(K, xi, sl::FractionalOrder::of(p), sub);
    os << fmt(p) << "," << fmt(v) << "\n";
  }
  return 0;
}

int cmd_harmonics(const Options& opt, int dim) {
  std::ofstream file;
  std::ostream& os = open_out(opt, file);
  echo_config(os, "harmonics", opt);
  os << "m,lambda_re,lambda_im\n";
  for (int m = 0; m <= opt.max_degree; ++m) {
    sl::Complex lam = sl::lambda_eigenvalue(dim, opt.p, m);
    os << m << "," << fmt(lam.real()) << "," << fmt(lam.imag()) << "\n";
  }
  return 0;
}

int cmd_tabulated(const Options& opt, bool cross) {
  sl::StarBody K = load_body(opt.body_path, opt.delta);
  sl::SphereQuadrature quad = sl::sphere_grid(K.dim(), opt.grid_order);
  sl::StarBody out_body = cross ? sl::cross_section_body(K, quad)
                                : sl::intersection_body(K, quad);
  std::ofstream file;
  std::ostream& os = open_out(opt, file);
  echo_config(os, cross ? "cbody" : "ibody", opt);
  os << "node_index";
  for (int d = 0; d < K.dim(); ++d) os << ",xi" << d;
  os << ",rho\n";
  for (std::size_t i = 0; i < quad.size(); ++i) {
    os << i;
    for (int d = 0; d < K.dim(); ++d) os << "," << fmt(quad.nodes[i][d]);
    os << "," << fmt(out_body.radial(quad.nodes[i])) << "\n";
  }
  if (!opt.spec_out.empty()) {
    // Project the tabulated radial function onto the harmonic basis and
    // save it as a re-ingestible radial_series spec.
    auto f = [&](const sl::Direction& xi) { return out_body.radial(xi); };
    sl::HarmonicExpansion exp = sl::expand(f, quad, opt.max_degree);
    double base = exp.blocks[0][0].real() *
                  sl::basis_eval(K.dim(), 0, 0, quad.nodes[0]);
    std::vector<sl::HarmonicTerm> terms;
    for (int m = 1; m <= opt.max_degree; ++m) {
      for (std::size_t idx = 0; idx < exp.blocks[static_cast<std::size_t>(m)].size();
           ++idx) {
        double c = exp.blocks[static_cast<std::size_t>(m)][idx].real();
        if (std::abs(c) > 1e-14 * base)
          terms.push_back({m, static_cast<int>(idx), c});
      }
    }
    sl::ConvexBodySpec series =
        sl::ConvexBodySpec::radial_series(K.dim(), base, std::move(terms));
    sl::write_body_spec(series, opt.spec_out);
  }
  return 0;
}

int cmd_metric(const Options& opt) {
  sl::StarBody K = load_body(opt.body_path, opt.delta);
  if (opt.body2_path.empty()) throw sl::SpecError("metric needs --body2");
  sl::StarBody L = opt.body2_path == "reflect"
                       ? sl::reflect(K)
                       : load_body(opt.body2_path, opt.delta);
  sl::SphereQuadrature quad = sl::sphere_grid(K.dim(), opt.grid_order);
  sl::RadialMetricResult rm = sl::radial_metric(K, L, quad, true);
  auto [dinf, d2] = sl::hausdorff_and_l2(K, L, quad);
  std::ofstream file;
  std::ostream& os = open_out(opt, file);
  echo_config(os, "metric", opt);
  os << "radial,hausdorff,l2,grid_order\n";
  os << fmt(rm.value) << "," << fmt(dinf) << "," << fmt(d2) << ","
     << rm.grid_order << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for hyperplane sections of convex bodies"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* sub, bool needs_body) {
    auto* b = sub->add_option("--body", opt.body_path, "body-spec JSON file");
    if (needs_body) b->required();
    sub->add_option("--body2", opt.body2_path,
                    "second body-spec file ('reflect' mirrors --body)");
    sub->add_option("--xi", opt.xi, "direction components");
    sub->add_option("--t", opt.t_values, "t values (p values for fracderiv)");
    sub->add_option("--p", opt.p, "operator/derivative order");
    sub->add_option("--delta", opt.delta, "mollification radius (0 = off)");
    sub->add_option("--grid-order", opt.grid_order, "sphere grid order");
    sub->add_option("--max-degree", opt.max_degree, "harmonic degree cutoff");
    sub->add_option("--sweep", opt.sweep,
                    "family sweep: shifted-ball, shifted-disk, dilated-ball");
    sub->add_option("--seed", opt.seed, "RNG seed");
    sub->add_option("--out", opt.out_path, "output CSV path (default stdout)");
  };

  auto* section = app.add_subcommand("section", "parallel section profile");
  add_common(section, true);
  section->add_option("--points", opt.points, "profile grid size");

  auto* verify = app.add_subcommand("verify", "stability theorem checks");
  add_common(verify, false);
  verify->add_option("--theorem", opt.theorem,
                     "mmo, main1, cor1, main2, intparallel, keylemma");

  auto* fracderiv = app.add_subcommand("fracderiv", "fractional section derivative");
  add_common(fracderiv, true);

  auto* harmonics = app.add_subcommand("harmonics", "operator eigenvalue table");
  add_common(harmonics, false);
  int harm_dim = 3;
  harmonics->add_option("--dim", harm_dim, "ambient dimension");

  auto* ibody = app.add_subcommand("ibody", "intersection body tabulation");
  add_common(ibody, true);
  ibody->add_option("--spec-out", opt.spec_out,
                    "write the result as a radial_series body spec");
  auto* cbody = app.add_subcommand("cbody", "cross-section body tabulation");
  add_common(cbody, true);
  cbody->add_option("--spec-out", opt.spec_out,
                    "write the result as a radial_series body spec");
  auto* metric = app.add_subcommand("metric", "distances between two bodies");
  add_common(metric, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (section->parsed()) return cmd_section(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (fracderiv->parsed()) return cmd_fracderiv(opt);
    if (harmonics->parsed()) return cmd_harmonics(opt, harm_dim);
    if (ibody->parsed()) return cmd_tabulated(opt, false);
    if (cbody->parsed()) return cmd_tabulated(opt, true);
    if (metric->parsed()) return cmd_metric(opt);
  } catch (const sl::SpecError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const sl::InvalidBody& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const sl::DimError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
