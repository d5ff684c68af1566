#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hadamard {

enum class ErrorKind {
  invalid_argument,
  domain,
  conjugate_point,
  refinement_failure,
  blow_down,
  bracket_failure,
  convergence_failure,
  compact_model,
  infinite_order,
  parse_error,
  io_error,
};

std::string_view to_string(ErrorKind kind);

/// All library failures are reported through this exception; `kind()` lets
/// callers (and the CLI exit-code logic) tell domain errors from numerical ones.
class LabError : public std::runtime_error {
 public:
  LabError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::domain: return "outside domain";
    case ErrorKind::conjugate_point: return "conjugate point";
    case ErrorKind::refinement_failure: return "refinement failure";
    case ErrorKind::blow_down: return "blow-down";
    case ErrorKind::bracket_failure: return "bracket failure";
    case ErrorKind::convergence_failure: return "convergence failure";
    case ErrorKind::compact_model: return "compact model";
    case ErrorKind::infinite_order: return "infinite order";
    case ErrorKind::parse_error: return "parse error";
    case ErrorKind::io_error: return "io error";
  }
  return "error";
}

}  // namespace hadamard
