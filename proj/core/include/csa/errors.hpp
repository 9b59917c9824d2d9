#pragma once

#include <stdexcept>
#include <string>

namespace csa {

// Malformed or inconsistent input: bad dimensions, unparsable files,
// non-associative tables, reducible defining polynomials.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The algebra provably is not isomorphic to a full matrix algebra over its
// base field. Raised only on exact evidence.
class StructuralFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive search certified that no matrix-unit witness exists, hence
// the input is not split.
class NotSplit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search or factoring budget ran out. Says nothing about the input.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical work could not be certified below the configured precision cap.
class PrecisionCeiling : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace csa
