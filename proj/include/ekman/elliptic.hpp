#pragma once

#include <stdexcept>
#include <vector>

#include "ekman/field.hpp"
#include "ekman/littlewood_paley.hpp"

namespace ekman {

struct PressureSolveParams {
  double tol = 1e-10;
  int max_iter = 500;

  void validate() const;
};

/// Range of the coefficient a = 1/rho.
struct CoefficientBounds {
  double a_star = 1.0;   // inf 1/rho
  double a_upper = 1.0;  // sup 1/rho

  static CoefficientBounds from_density(const ScalarField& rho);
  [[nodiscard]] double midpoint() const { return 0.5 * (a_star + a_upper); }
  /// ||a - midpoint||_inf / midpoint; the fixed-point contraction factor.
  [[nodiscard]] double contraction() const { return (a_upper - a_star) / (a_upper + a_star); }
};

struct PressureSolution {
  ScalarField pressure;       // zero-mean gauge
  VectorField gradient;
  int iterations = 0;         // the constant-coefficient start counts as the first
  double residual = 0.0;      // relative L^2 residual of the final iterate
  bool converged = false;
  std::vector<double> residual_history;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}
  [[nodiscard]] int iterations() const { return iterations_; }
  [[nodiscard]] double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// The discrete operator -div((1/rho) grad p), collocation products.
ScalarField pressure_operator(const ScalarField& inv_rho, const ScalarField& p);

/// Fixed-point solve of -div((1/rho) grad Pi) = div F. Never throws on
/// non-convergence; inspect `converged`. Throws std::invalid_argument when rho
/// is not strictly positive.
PressureSolution iterate_pressure(const ScalarField& rho, const VectorField& F,
                                  const PressureSolveParams& params = {});

/// As iterate_pressure, but throws ConvergenceError when the tolerance is not met.
PressureSolution solve_pressure(const ScalarField& rho, const VectorField& F,
                                const PressureSolveParams& params = {});

/// ||grad Pi||_{L^2} * a_star / ||F||_{L^2}; at most 1 for an exact solve.
double lax_milgram_check(const ScalarField& rho, const VectorField& F, const VectorField& grad_pi);

/// ||grad Pi||_{B^1_{inf,1}} / [(1 + ||grad rho||_inf^eta) ||F||_{L^2} + ||rho div F||_{B^0_{inf,1}}].
/// Reported, not thresholded.
double pressure_besov_ratio(const DyadicFilterBank& bank, const ScalarField& rho,
                            const VectorField& F, const VectorField& grad_pi, double eta = 2.0);

}  // namespace ekman
