#pragma once

#include <stdexcept>
#include <string>

namespace skymason {

/// Blueprint file did not match the documented schema.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Schema was fine but a field value violates an invariant.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Bricks cannot be assembled as described (overlaps, missing support).
struct LayoutError : std::runtime_error {
  explicit LayoutError(const std::string& what) : std::runtime_error(what) {}
};

/// A caller broke an operation contract (unknown ids, bad lifecycle).
struct ContractViolation : std::logic_error {
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

}  // namespace skymason
