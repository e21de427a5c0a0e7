#pragma once

#include <stdexcept>
#include <string>

namespace fqpw {

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Malformed material or energy document; message starts with the field path.
struct SchemaError : std::runtime_error {
  SchemaError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), field_path(path) {}
  std::string field_path;
};

struct UnsupportedGeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutOfGridError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// Raised for the omitted nu = 0 Coulomb / nuclear terms.
struct ExcludedTermError : std::domain_error {
  using std::domain_error::domain_error;
};

struct CapExceededError : std::length_error {
  using std::length_error::length_error;
};

}  // namespace fqpw
