#pragma once

#include "sleeve/subspace.hpp"

namespace sleeve {

/// Result of one recovery run.
struct RecoveryReport {
  Subspace estimate;    ///< estimated subspace (compare via its projection)
  double hs_error = 0;  ///< Hilbert-Schmidt distance to the ground truth
  long queries = 0;     ///< oracle evaluations consumed by the run
  int iterations = 0;   ///< solver iterations (0 for the adaptive algorithm)
  long wall_ms = 0;
};

}  // namespace sleeve
