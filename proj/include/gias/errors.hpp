#pragma once

#include <stdexcept>
#include <string>

namespace gias {

/// Raised when vector or operator shapes do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for inadmissible parameters (hyper-priors, tolerances, sizes).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// ker(F) and ker(R) share a nonzero vector, so the x-update is singular.
class CommonKernelError : public std::runtime_error {
 public:
  CommonKernelError()
      : std::runtime_error("common kernel condition violated: F*W is rank deficient") {}
};

/// A numerical routine could not proceed (non-PD factorization, solver breakdown).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gias
