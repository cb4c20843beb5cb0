#pragma once

#include <stdexcept>
#include <string>

namespace sectionlab {

struct InvalidBody : std::runtime_error {
  explicit InvalidBody(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimError : std::runtime_error {
  explicit DimError(const std::string& msg) : std::runtime_error(msg) {}
};

struct RangeError : std::runtime_error {
  explicit RangeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FrameError : std::runtime_error {
  explicit FrameError(const std::string& msg) : std::runtime_error(msg) {}
};

struct BoundaryError : std::runtime_error {
  explicit BoundaryError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SmoothnessError : std::runtime_error {
  explicit SmoothnessError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PoleError : std::runtime_error {
  explicit PoleError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResolutionError : std::runtime_error {
  explicit ResolutionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FitError : std::runtime_error {
  explicit FitError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SpecError : std::runtime_error {
  explicit SpecError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sectionlab
