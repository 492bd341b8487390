#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ekman/diagnostics.hpp"
#include "ekman/elliptic.hpp"
#include "ekman/presets.hpp"
#include "ekman/state.hpp"

namespace ekman {

/// Relative slack on the transported density bounds.
inline constexpr double kDensityDriftTol = 1e-6;
/// Relative bound on ||div u||_{L^2} / ||u||_{L^2} after each step.
inline constexpr double kDivergenceTol = 1e-10;

struct SimConfig {
  double alpha = 0.5;
  int gamma = 1;
  GridSpec grid;
  double dt = 1e-3;
  double t_end = 1.0;
  VelocityPreset u0;
  DensityPreset rho0;
  PressureSolveParams pressure;
  std::vector<BesovIndex> besov_indices{BesovIndex{1.0, kInf, 1.0}};
  int record_every = 1;

  /// Throws std::invalid_argument naming the offending key.
  void validate() const;
  [[nodiscard]] long long step_count() const;
  /// dt * ||u0||_inf * n / (2 pi); values above 0.5 deserve a warning.
  [[nodiscard]] double cfl_number(const VectorField& u0) const;
};

class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Builds (rho0, u0) from the presets, projects u0, and solves for the initial
/// pressure. A pressure solve that misses its tolerance is recorded in
/// `pressure_converged` instead of throwing.
FluidState initial_state(const SimConfig& config);

/// -u.grad u - (1/rho) grad Pi - alpha rho^{gamma-1} u, with the pressure that
/// makes the tendency divergence-free.
struct MomentumTendency {
  VectorField du;
  PressureSolution pressure;
};

MomentumTendency momentum_tendency(const ScalarField& rho, const VectorField& u, double alpha,
                                   int gamma, const PressureSolveParams& params);
VectorField momentum_rhs(const FluidState& state, const SimConfig& config);
ScalarField density_rhs(const FluidState& state);

/// One classical RK4 step on (rho, u) with a pressure solve per stage, followed
/// by a Leray projection and the invariant checks. The returned state carries
/// the converged pressure at its own time.
FluidState step_rk4(const FluidState& state, const SimConfig& config);

struct SimulationResult {
  std::vector<DiagnosticsRecord> records;
  bool completed = false;
  std::string failure;  // empty when completed
  long long steps = 0;
  FluidState final_state;
};

/// Integrates to t_end, recording every `record_every` steps and at the final
/// step. Step failures end the run with the partial records kept.
SimulationResult run_simulation(const SimConfig& config);
SimulationResult run_simulation(const SimConfig& config, FluidState state);

/// (e^{beta t} u, e^{beta t} grad Pi).
std::pair<VectorField, VectorField> rescaled_view(const FluidState& state, double alpha, double beta);

/// -grad^perp(1/rho) . grad Pi~ with Pi~ = e^{alpha t} Pi: the forcing of the
/// rescaled planar vorticity equation.
ScalarField vorticity_forcing(const FluidState& state, double alpha);

using VelocityProvider = std::function<VectorField(double)>;
using ForcingProvider = std::function<ScalarField(double)>;

/// RK4 for df/dt + v.grad f = g. Returns f at t = 0 and every `save_every`
/// steps thereafter (plus the final step). An empty forcing means g = 0.
std::vector<ScalarField> solve_linear_transport(const VelocityProvider& velocity,
                                                const ScalarField& f0,
                                                const ForcingProvider& forcing, double t_end,
                                                double dt, int save_every = 1);

/// Growth of Besov norms of a passively transported scalar.
struct TransportGrowthProbe {
  std::vector<double> times;
  std::vector<double> ratio_b0;    // ||f||_{B^0_{inf,1}} / (||f0||_{B^0_{inf,1}} (1 + int ||grad v||_inf))
  std::vector<double> ratio_bhalf; // same with B^{1/2}_{inf,1}
  double sup_b0 = 0.0;
  double sup_bhalf = 0.0;
  double l2_drift = 0.0;           // max |1 - ||f(t)||_{L^2} / ||f0||_{L^2}|
};

/// Transports f0 by the steady field v and samples every `sample_every` steps.
TransportGrowthProbe transport_growth_probe(const VectorField& v, const ScalarField& f0,
                                            double t_end, double dt, int sample_every);

}  // namespace ekman
