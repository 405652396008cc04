#pragma once

#include <cstddef>
#include <cstdint>

#include "pstlab/spectral.hpp"

namespace pstlab {

// Numerical knobs of the transfer decision. Defaults are the values every
// test and the census are run with.
struct CheckOptions {
  // Relative eigenvalue merging threshold (times max(1, spectral radius)).
  double grouping_tol = kDefaultGroupingTol;
  // Absolute projection norm below which an eigenspace has no support.
  double support_tol = 1e-9;
  // Allowed deviation of P|b> from e^{i phi} P|a>.
  double proportionality_tol = 1e-8;
  // Distance of (phi_k0 - phi_k) / pi from an integer for the exact path.
  double phase_tol = 1e-7;
  double residual_tol = kDefaultResidualTol;
  std::int64_t max_denominator = kDefaultMaxDenominator;
  // A Perfect verdict needs |<b|exp(-iHt0)|a>| >= 1 - fidelity_tol.
  double fidelity_tol = 1e-9;
  // Fallback search horizon in units of 1 / (half spectral spread).
  double t_max = 50.0;
  std::size_t scan_grid = 10'000;
};

}  // namespace pstlab
