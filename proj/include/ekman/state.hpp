#pragma once

#include "ekman/field.hpp"

namespace ekman {

/// Snapshot of (rho, u, grad Pi) at time t. The density bounds are the
/// initial extrema, which transport must preserve.
struct FluidState {
  double t = 0.0;
  ScalarField rho;
  VectorField u;
  VectorField grad_pressure;  // from the last pressure solve at this state
  double rho_lower = 1.0;
  double rho_upper = 1.0;
  /// False when grad_pressure came from a solve that missed its tolerance.
  bool pressure_converged = true;
};

}  // namespace ekman
