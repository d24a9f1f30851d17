#pragma once

#include <stdexcept>
#include <string>

namespace halab {

// Error taxonomy.  The CLI maps these onto process exit codes, so new error
// kinds belong here rather than as bare std exceptions.

// Bad user-facing parameter (p out of range, malformed delta list, ...).
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Geometry that cannot be expressed on the cell lattice.
struct AlignmentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Grid too coarse for the requested computation.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Covering/search procedures that came up empty.
struct CoverageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sparse-family construction could not complete.
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Iterative solver exhausted its bracket or iteration budget.
struct NonConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Work estimate exceeds the configured budget; caller must lower the depth.
struct CostBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace halab
