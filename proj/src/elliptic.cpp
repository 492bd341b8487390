#include "ekman/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ekman {

void PressureSolveParams::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("pressure.tol: must be positive");
  if (max_iter < 1) throw std::invalid_argument("pressure.max_iter: must be >= 1");
}

CoefficientBounds CoefficientBounds::from_density(const ScalarField& rho) {
  const double lo = rho.min();
  const double hi = rho.max();
  if (!(lo > 0.0)) throw std::invalid_argument("density must be strictly positive on the grid");
  return {1.0 / hi, 1.0 / lo};
}

namespace {

// L^2 norm from the coefficients (Parseval). Sums of spectrally computed terms
// cancel here to roundoff of the coefficients, not of the largest operand.
double spectral_l2(const ScalarField& f) {
  const auto& s = f.spectrum();
  const int n = f.grid().n;
  double sum = 0.0;
  for (int j = 0; j <= n / 2; ++j) {
    const double w = (j == 0 || j == n / 2) ? 1.0 : 2.0;
    sum += w * s.col(j).abs2().sum();
  }
  return std::sqrt(sum);
}

}  // namespace

ScalarField pressure_operator(const ScalarField& inv_rho, const ScalarField& p) {
  const VectorField g = gradient(p);
  return -divergence(make_vector(multiply(inv_rho, g[0]), multiply(inv_rho, g[1])));
}

PressureSolution iterate_pressure(const ScalarField& rho, const VectorField& F,
                                  const PressureSolveParams& params) {
  params.validate();
  const auto bounds = CoefficientBounds::from_density(rho);
  const double a_bar = bounds.midpoint();
  const ScalarField a = map(rho, [](double r) { return 1.0 / r; });
  const ScalarField a_shift = a + (-a_bar);
  const ScalarField rhs = divergence(F);
  // Residuals are relative to ||div F||, floored at the roundoff level of a
  // spectral divergence so that divergence-free forcing converges at once.
  const double roundoff = 1e-13 * rho.grid().k_max() * lp_norm(F, 2.0);
  const double rhs_norm = std::max(spectral_l2(rhs), roundoff);

  PressureSolution sol;
  auto finish = [&](ScalarField p) {
    sol.gradient = gradient(p);
    sol.pressure = std::move(p);
    return sol;
  };

  // lap Pi = -(1/a_bar)(div F + div((a - a_bar) grad Pi))
  ScalarField p = inverse_laplacian((-1.0 / a_bar) * rhs);
  for (sol.iterations = 1;; ++sol.iterations) {
    const VectorField g = gradient(p);
    const ScalarField flux_div =
        divergence(make_vector(multiply(a_shift, g[0]), multiply(a_shift, g[1])));
    // The operator applied to p, reusing the split: -a_bar lap p - div((a - a_bar) grad p).
    const ScalarField residual = (-a_bar) * laplacian(p) - flux_div - rhs;
    const double res = spectral_l2(residual);
    sol.residual = rhs_norm > 0.0 ? res / rhs_norm : res;
    sol.residual_history.push_back(sol.residual);
    if (sol.residual <= params.tol) {
      sol.converged = true;
      return finish(std::move(p));
    }
    if (sol.iterations >= params.max_iter) return finish(std::move(p));
    p = inverse_laplacian((-1.0 / a_bar) * (rhs + flux_div));
  }
}

PressureSolution solve_pressure(const ScalarField& rho, const VectorField& F,
                                const PressureSolveParams& params) {
  auto sol = iterate_pressure(rho, F, params);
  if (!sol.converged) {
    std::ostringstream msg;
    msg << "pressure solve did not converge: residual " << sol.residual << " after "
        << sol.iterations << " iterations (tol " << params.tol << ")";
    throw ConvergenceError(msg.str(), sol.iterations, sol.residual);
  }
  return sol;
}

double lax_milgram_check(const ScalarField& rho, const VectorField& F, const VectorField& grad_pi) {
  const auto bounds = CoefficientBounds::from_density(rho);
  const double f_norm = lp_norm(F, 2.0);
  const double g_norm = lp_norm(grad_pi, 2.0);
  if (f_norm == 0.0) {
    if (g_norm > 1e-12) {
      throw std::runtime_error("lax_milgram_check: nonzero pressure gradient for zero forcing");
    }
    return 0.0;
  }
  return g_norm * bounds.a_star / f_norm;
}

double pressure_besov_ratio(const DyadicFilterBank& bank, const ScalarField& rho,
                            const VectorField& F, const VectorField& grad_pi, double eta) {
  const double lhs = besov_norm(bank, grad_pi, BesovIndex{1.0, kInf, 1.0});
  const double grad_rho = lp_norm(gradient(rho), kInf);
  const double rhs = (1.0 + std::pow(grad_rho, eta)) * lp_norm(F, 2.0) +
                     besov_norm(bank, product(rho, divergence(F)), BesovIndex{0.0, kInf, 1.0});
  return rhs > 0.0 ? lhs / rhs : 0.0;
}

}  // namespace ekman
