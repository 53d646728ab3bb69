#pragma once

#include <stdexcept>

namespace cwn {

// Requested degree exceeds the configured cap.
struct DegreeOverflowError : std::domain_error {
  using std::domain_error::domain_error;
};

// Recurrence magnitude passed the configured overflow cap.
struct OverflowGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Adaptive refinement exhausted its subdivision budget.
struct ToleranceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameter outside the convergence regime of the requested expansion.
struct RegimeError : std::domain_error {
  using std::domain_error::domain_error;
};

// Chaos-vector support violates an order precondition.
struct OrderError : std::domain_error {
  using std::domain_error::domain_error;
};

// Weight-series exponent below the convergence exponent d.
struct DivergenceError : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace cwn
