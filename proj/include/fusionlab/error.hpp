#pragma once

#include <stdexcept>
#include <string>

namespace fusionlab {

/// Bad user input: unknown catalog names, malformed ring files, labels that
/// do not belong to a ring, out-of-range parameters.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A well-formed request that cannot be carried out (budget exceeded,
/// infeasible optimizer radius, wrong arithmetic mode, mixed rings).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fusionlab
