#pragma once

#include <stdexcept>
#include <string>

namespace longipred {

/// Structurally malformed input (bad CSV cell, unreadable file).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a domain rule (non-binary label,
/// duplicate id, stratum too small, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace longipred
