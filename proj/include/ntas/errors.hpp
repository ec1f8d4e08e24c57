#pragma once

#include <stdexcept>
#include <string>

namespace ntas {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative kernel (series, continued fraction, root bracketing,
/// quadrature) failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed form produced a value that cannot be a moment (nonpositive).
class NonPhysicalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No default weighting coefficients exist for the requested cascade order.
class CoefficientLookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace ntas
