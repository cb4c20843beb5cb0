#pragma once

#include <string>

#include "sectionlab/body.hpp"

namespace sectionlab {

// Reads a body-spec file: JSON object {type, dim, parameters}.  Supported
// types: ball, ellipsoid, polytope, cube, radial_series.  Throws SpecError
// on malformed input (missing file, bad JSON, unknown type, wrong shapes).
ConvexBodySpec read_body_spec(const std::string& path);
ConvexBodySpec parse_body_spec(const std::string& text);

std::string body_spec_to_json(const ConvexBodySpec& spec);
void write_body_spec(const ConvexBodySpec& spec, const std::string& path);

}  // namespace sectionlab
