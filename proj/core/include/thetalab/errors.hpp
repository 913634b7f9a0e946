#pragma once

#include <stdexcept>
#include <string>

namespace thetalab {

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Eigensolver or iteration breakdown; carries whatever context the caller had.
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Root bracketing/convergence failure; `diagnostics` holds sampled values.
struct SolverFailure : std::runtime_error {
  explicit SolverFailure(const std::string& what, std::string diagnostics = {})
      : std::runtime_error(what), diagnostics(std::move(diagnostics)) {}
  std::string diagnostics;
};

struct ConstraintViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace thetalab
