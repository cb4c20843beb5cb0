#include "sectionlab/spec_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sectionlab/errors.hpp"

namespace sectionlab {

using nlohmann::json;

namespace {

Vec read_vec(const json& j, const char* what) {
  if (!j.is_array()) throw SpecError(std::string(what) + " must be an array");
  Vec v;
  for (const auto& x : j) {
    if (!x.is_number()) throw SpecError(std::string(what) + " must be numeric");
    v.push_back(x.get<double>());
  }
  return v;
}

ConvexBodySpec from_json(const json& j) {
  if (!j.is_object()) throw SpecError("body spec must be a JSON object");
  if (!j.contains("type") || !j["type"].is_string())
    throw SpecError("body spec needs a string 'type'");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw SpecError("body spec needs an integer 'dim'");
  const std::string type = j["type"].get<std::string>();
  const int dim = j["dim"].get<int>();
  const json params = j.value("parameters", json::object());
  if (!params.is_object()) throw SpecError("'parameters' must be an object");

  try {
    if (type == "ball") {
      Vec center(static_cast<std::size_t>(dim), 0.0);
      if (params.contains("center")) center = read_vec(params["center"], "center");
      double radius = params.value("radius", 1.0);
      return ConvexBodySpec::ball(center, radius);
    }
    if (type == "ellipsoid") {
      Vec center(static_cast<std::size_t>(dim), 0.0);
      if (params.contains("center")) center = read_vec(params["center"], "center");
      if (!params.contains("semi_axes"))
        throw SpecError("ellipsoid needs 'semi_axes'");
      std::vector<double> axes = read_vec(params["semi_axes"], "semi_axes");
      std::vector<Vec> rot;
      if (params.contains("rotation")) {
        for (const auto& row : params["rotation"])
          rot.push_back(read_vec(row, "rotation row"));
      }
      return ConvexBodySpec::ellipsoid(center, axes, rot);
    }
    if (type == "cube") {
      double half_side = params.value("half_side", 1.0);
      Vec shift;
      if (params.contains("shift")) shift = read_vec(params["shift"], "shift");
      return ConvexBodySpec::cube(dim, half_side, shift);
    }
    if (type == "polytope") {
      if (!params.contains("facets")) throw SpecError("polytope needs 'facets'");
      std::vector<Halfspace> facets;
      for (const auto& f : params["facets"]) {
        Halfspace h;
        h.normal = read_vec(f.at("normal"), "facet normal");
        h.offset = f.at("offset").get<double>();
        facets.push_back(std::move(h));
      }
      return ConvexBodySpec::polytope(std::move(facets));
    }
    if (type == "radial_series") {
      double base = params.value("base_radius", 1.0);
      std::vector<HarmonicTerm> terms;
      if (params.contains("terms")) {
        for (const auto& t : params["terms"]) {
          HarmonicTerm term;
          term.degree = t.at("degree").get<int>();
          term.index = t.at("index").get<int>();
          term.coeff = t.at("coeff").get<double>();
          terms.push_back(term);
        }
      }
      return ConvexBodySpec::radial_series(dim, base, std::move(terms));
    }
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed body spec: ") + e.what());
  } catch (const InvalidBody& e) {
    throw SpecError(std::string("invalid body spec: ") + e.what());
  }
  throw SpecError("unknown body type '" + type + "'");
}

}  // namespace

ConvexBodySpec parse_body_spec(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SpecError("body spec is not valid JSON");
  return from_json(j);
}

ConvexBodySpec read_body_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open body spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_body_spec(buf.str());
}

std::string body_spec_to_json(const ConvexBodySpec& spec) {
  json j;
  j["dim"] = spec.dim;
  json& params = j["parameters"];
  if (const auto* b = std::get_if<Ball>(&spec.shape)) {
    j["type"] = "ball";
    params["center"] = b->center;
    params["radius"] = b->radius;
  } else if (const auto* e = std::get_if<Ellipsoid>(&spec.shape)) {
    j["type"] = "ellipsoid";
    params["center"] = e->center;
    params["semi_axes"] = e->semi_axes;
    if (!e->rotation.empty()) params["rotation"] = e->rotation;
  } else if (const auto* p = std::get_if<Polytope>(&spec.shape)) {
    j["type"] = "polytope";
    params["facets"] = json::array();
    for (const auto& f : p->facets)
      params["facets"].push_back({{"normal", f.normal}, {"offset", f.offset}});
  } else if (const auto* r = std::get_if<RadialSeries>(&spec.shape)) {
    j["type"] = "radial_series";
    params["base_radius"] = r->base_radius;
    params["terms"] = json::array();
    for (const auto& t : r->terms)
      params["terms"].push_back(
          {{"degree", t.degree}, {"index", t.index}, {"coeff", t.coeff}});
  }
  return j.dump(2);
}

void write_body_spec(const ConvexBodySpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SpecError("cannot write body spec file: " + path);
  out << body_spec_to_json(spec) << "\n";
}

}  // namespace sectionlab
