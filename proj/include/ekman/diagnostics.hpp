#pragma once

#include <span>
#include <string>
#include <vector>

#include "ekman/littlewood_paley.hpp"
#include "ekman/state.hpp"

namespace ekman {

struct DiagnosticsRecord {
  double t = 0.0;
  double l2_u = 0.0;
  std::vector<double> besov_u;  // one per tracked index
  double l2_grad_pressure = 0.0;
  std::vector<double> besov_grad_pressure;
  double besov_rho_minus_1 = 0.0;  // B^1_{inf,1}
  double rho_min = 0.0;
  double rho_max = 0.0;
  double energy = 0.0;  // 0.5 * mean(rho |u|^2)
  double grad_u_inf = 0.0;
  double bkm_running = 0.0;  // trapezoid integral of grad_u_inf
};

/// Evaluates one row. `previous` (if any) feeds the running BKM integral.
DiagnosticsRecord make_record(const FluidState& state, const DyadicFilterBank& bank,
                              std::span<const BesovIndex> tracked,
                              const DiagnosticsRecord* previous = nullptr);

struct DecayFit {
  double rate = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
};

/// Least-squares line through (t, log value) over t_lo <= t <= t_hi; rate = -slope.
DecayFit fit_decay_rate(std::span<const double> times, std::span<const double> values, double t_lo,
                        double t_hi);

/// Norms of the initial data entering the smallness conditions.
struct InitialNorms {
  double u_besov = 0.0;    // ||u0||_{B^1_{inf,1}}
  double u_l2 = 0.0;       // ||u0||_{L^2}
  double rho_besov = 0.0;  // ||rho0 - 1||_{B^1_{inf,1}}

  [[nodiscard]] double u_intersection() const { return u_l2 + u_besov; }
};

InitialNorms initial_norms(const DyadicFilterBank& bank, const ScalarField& rho0,
                           const VectorField& u0);

/// K stands in for the existential constant; eta for the general theorems,
/// eta_2d (> 5) for the planar one.
struct SmallnessParams {
  double K = 1.0;
  double eta = 2.0;
  double eta_2d = 5.01;
  double delta = 0.01;

  void validate() const;
};

struct ConditionReport {
  std::string theorem_id;  // gamma1_general | gamma0_general | gamma1_2d
  std::vector<double> lhs;
  std::vector<double> thresholds;
  bool satisfied = false;
  double alpha = 0.0;
  double K = 0.0;
  double eta = 0.0;
  InitialNorms norms;
};

ConditionReport smallness_gamma1_general(const InitialNorms& norms, double alpha,
                                         const SmallnessParams& params = {});
ConditionReport smallness_gamma0_general(const InitialNorms& norms, double alpha,
                                         const SmallnessParams& params = {});
ConditionReport smallness_gamma1_2d(const InitialNorms& norms, double alpha,
                                    const SmallnessParams& params = {});

/// theta0 / (1 + theta0) * alpha / rho_upper with theta0 = 1 / (s + d/2 + delta).
double beta0(double alpha, double rho_upper, double s, int d, double delta);

struct BkmReport {
  double integral = 0.0;
  std::vector<double> increments;
  /// Advisory: every ratio of consecutive increments over the last five intervals is < 1.
  bool tail_decaying = false;
  double max_tail_ratio = 0.0;
};

BkmReport bkm_report(std::span<const DiagnosticsRecord> records);

/// max_i |dE/dt + alpha mean(rho^gamma |u|^2)| / (alpha E(0)), centered differences
/// on the interior records. With alpha = 0 the normalization is E(0).
double energy_balance_residual(std::span<const DiagnosticsRecord> records, int gamma, double alpha);

}  // namespace ekman
