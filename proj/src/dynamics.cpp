#include "ekman/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace ekman {

void SimConfig::validate() const {
  grid.validate();
  if (!(alpha >= 0.0)) throw std::invalid_argument("physics.alpha: must be >= 0");
  if (gamma != 0 && gamma != 1) throw std::invalid_argument("physics.gamma: must be 0 or 1");
  if (!(dt > 0.0)) throw std::invalid_argument("time.dt: must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("time.t_end: must be >= 0");
  if (record_every < 1) throw std::invalid_argument("time.record_every: must be >= 1");
  pressure.validate();
  for (const auto& idx : besov_indices) {
    if (!(idx.p >= 1.0) || !(idx.r >= 1.0)) {
      throw std::invalid_argument("track.besov_indices: p and r must be >= 1");
    }
  }
}

long long SimConfig::step_count() const { return std::llround(t_end / dt); }

double SimConfig::cfl_number(const VectorField& u0) const {
  return dt * lp_norm(u0, kInf) * grid.n / grid.length;
}

namespace {

// u.grad u + alpha rho^{gamma-1} u
VectorField pressure_forcing(const ScalarField& inv_rho, const VectorField& u, double alpha, int gamma) {
  const VectorField adv = advect(u, u);
  if (gamma == 1) return adv + alpha * u;
  return adv + alpha * product(inv_rho, u);
}

VectorField tendency_from(const VectorField& F, const ScalarField& inv_rho, const VectorField& grad_pi) {
  VectorField du;
  for (std::size_t i = 0; i < F.dim(); ++i) {
    du.components.push_back(dealias(-F[i] - multiply(inv_rho, grad_pi[i])));
  }
  return du;
}

ScalarField reciprocal(const ScalarField& rho) {
  return map(rho, [](double r) { return 1.0 / r; });
}

void check_invariants(const FluidState& s) {
  const double lo = s.rho.min();
  const double hi = s.rho.max();
  if (lo < s.rho_lower * (1.0 - kDensityDriftTol) || hi > s.rho_upper * (1.0 + kDensityDriftTol)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density bounds violated at t = " << s.t << ": [" << lo << ", " << hi
        << "] outside [" << s.rho_lower << ", " << s.rho_upper << "] (relative slack "
        << kDensityDriftTol << ")";
    throw InvariantViolation(msg.str());
  }
  const double u_norm = lp_norm(s.u, 2.0);
  const double div_norm = lp_norm(divergence(s.u), 2.0);
  if (div_norm > kDivergenceTol * u_norm) {
    std::ostringstream msg;
    msg << "divergence drift at t = " << s.t << ": ||div u|| = " << div_norm
        << ", ||u|| = " << u_norm;
    throw InvariantViolation(msg.str());
  }
}

}  // namespace

FluidState initial_state(const SimConfig& config) {
  config.validate();
  FluidState s;
  s.t = 0.0;
  s.rho = make_density(config.grid, config.rho0);
  s.u = leray_project(dealias(make_velocity(config.grid, config.u0)));
  s.rho_lower = s.rho.min();
  s.rho_upper = s.rho.max();
  const ScalarField inv_rho = reciprocal(s.rho);
  auto sol = iterate_pressure(s.rho, pressure_forcing(inv_rho, s.u, config.alpha, config.gamma),
                              config.pressure);
  s.grad_pressure = std::move(sol.gradient);
  s.pressure_converged = sol.converged;
  return s;
}

MomentumTendency momentum_tendency(const ScalarField& rho, const VectorField& u, double alpha,
                                   int gamma, const PressureSolveParams& params) {
  const ScalarField inv_rho = reciprocal(rho);
  const VectorField F = pressure_forcing(inv_rho, u, alpha, gamma);
  auto sol = solve_pressure(rho, F, params);
  VectorField du = tendency_from(F, inv_rho, sol.gradient);
  return {std::move(du), std::move(sol)};
}

VectorField momentum_rhs(const FluidState& state, const SimConfig& config) {
  return momentum_tendency(state.rho, state.u, config.alpha, config.gamma, config.pressure).du;
}

ScalarField density_rhs(const FluidState& state) { return -advect(state.u, state.rho); }

FluidState step_rk4(const FluidState& state, const SimConfig& config) {
  if (!state.pressure_converged) {
    throw ConvergenceError("pressure at t = " + std::to_string(state.t) + " is not converged", 0, 0.0);
  }
  const double dt = config.dt;
  const double a = config.alpha;
  const int g = config.gamma;
  const auto& params = config.pressure;

  // Stage 1 reuses the converged pressure cached with the state.
  const ScalarField inv_rho = reciprocal(state.rho);
  const VectorField k1u =
      tendency_from(pressure_forcing(inv_rho, state.u, a, g), inv_rho, state.grad_pressure);
  const ScalarField k1r = -advect(state.u, state.rho);

  const ScalarField rho2 = state.rho + (0.5 * dt) * k1r;
  const VectorField u2 = state.u + (0.5 * dt) * k1u;
  const VectorField k2u = momentum_tendency(rho2, u2, a, g, params).du;
  const ScalarField k2r = -advect(u2, rho2);

  const ScalarField rho3 = state.rho + (0.5 * dt) * k2r;
  const VectorField u3 = state.u + (0.5 * dt) * k2u;
  const VectorField k3u = momentum_tendency(rho3, u3, a, g, params).du;
  const ScalarField k3r = -advect(u3, rho3);

  const ScalarField rho4 = state.rho + dt * k3r;
  const VectorField u4 = state.u + dt * k3u;
  const VectorField k4u = momentum_tendency(rho4, u4, a, g, params).du;
  const ScalarField k4r = -advect(u4, rho4);

  FluidState next;
  next.t = state.t + dt;
  next.rho_lower = state.rho_lower;
  next.rho_upper = state.rho_upper;
  next.rho = state.rho + (dt / 6.0) * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
  next.u = leray_project(state.u + (dt / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u));
  const ScalarField inv_next = reciprocal(next.rho);
  next.grad_pressure =
      solve_pressure(next.rho, pressure_forcing(inv_next, next.u, a, g), params).gradient;
  check_invariants(next);
  return next;
}

SimulationResult run_simulation(const SimConfig& config) {
  return run_simulation(config, initial_state(config));
}

SimulationResult run_simulation(const SimConfig& config, FluidState state) {
  config.validate();
  const DyadicFilterBank bank(config.grid);
  SimulationResult result;
  result.records.push_back(make_record(state, bank, config.besov_indices));
  const long long n = config.step_count();
  const double t0 = state.t;
  for (long long s = 1; s <= n; ++s) {
    try {
      state = step_rk4(state, config);
    } catch (const std::exception& e) {
      result.failure = e.what();
      result.final_state = std::move(state);
      return result;
    }
    state.t = t0 + static_cast<double>(s) * config.dt;
    result.steps = s;
    if (s % config.record_every == 0 || s == n) {
      result.records.push_back(make_record(state, bank, config.besov_indices, &result.records.back()));
    }
  }
  result.completed = true;
  result.final_state = std::move(state);
  return result;
}

std::pair<VectorField, VectorField> rescaled_view(const FluidState& state, double alpha, double beta) {
  (void)alpha;
  if (!(beta >= 0.0)) throw std::invalid_argument("rescaled_view: beta must be >= 0");
  const double factor = std::exp(beta * state.t);
  return {factor * state.u, factor * state.grad_pressure};
}

ScalarField vorticity_forcing(const FluidState& state, double alpha) {
  const VectorField perp = perp_gradient(reciprocal(state.rho));
  const VectorField gp = std::exp(alpha * state.t) * state.grad_pressure;
  return -(product(perp[0], gp[0]) + product(perp[1], gp[1]));
}

std::vector<ScalarField> solve_linear_transport(const VelocityProvider& velocity,
                                                const ScalarField& f0,
                                                const ForcingProvider& forcing, double t_end,
                                                double dt, int save_every) {
  if (!(dt > 0.0) || !(t_end >= 0.0) || save_every < 1) {
    throw std::invalid_argument("solve_linear_transport: need dt > 0, t_end >= 0, save_every >= 1");
  }
  auto rhs = [&](double t, const ScalarField& f) {
    ScalarField out = -advect(velocity(t), f);
    if (forcing) out = out + forcing(t);
    return out;
  };
  std::vector<ScalarField> out{f0};
  ScalarField f = f0;
  const long long n = std::llround(t_end / dt);
  for (long long s = 0; s < n; ++s) {
    const double t = static_cast<double>(s) * dt;
    const ScalarField k1 = rhs(t, f);
    const ScalarField k2 = rhs(t + 0.5 * dt, f + (0.5 * dt) * k1);
    const ScalarField k3 = rhs(t + 0.5 * dt, f + (0.5 * dt) * k2);
    const ScalarField k4 = rhs(t + dt, f + dt * k3);
    f = f + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((s + 1) % save_every == 0 || s + 1 == n) out.push_back(f);
  }
  return out;
}

TransportGrowthProbe transport_growth_probe(const VectorField& v, const ScalarField& f0,
                                            double t_end, double dt, int sample_every) {
  const DyadicFilterBank bank(f0.grid());
  const BesovIndex b0{0.0, kInf, 1.0};
  const BesovIndex bhalf{0.5, kInf, 1.0};
  const double f0_b0 = besov_norm(bank, f0, b0);
  const double f0_l2 = lp_norm(f0, 2.0);
  const double grad_v = gradient_sup_norm(v);
  const auto traj = solve_linear_transport([&](double) { return v; }, f0, {}, t_end, dt, sample_every);
  const long long n = std::llround(t_end / dt);

  TransportGrowthProbe probe;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const long long step = std::min<long long>(static_cast<long long>(i) * sample_every, n);
    const double t = static_cast<double>(step) * dt;
    const double denom = f0_b0 * (1.0 + grad_v * t);
    probe.times.push_back(t);
    probe.ratio_b0.push_back(besov_norm(bank, traj[i], b0) / denom);
    probe.ratio_bhalf.push_back(besov_norm(bank, traj[i], bhalf) / denom);
    probe.sup_b0 = std::max(probe.sup_b0, probe.ratio_b0.back());
    probe.sup_bhalf = std::max(probe.sup_bhalf, probe.ratio_bhalf.back());
    if (f0_l2 > 0.0) {
      probe.l2_drift = std::max(probe.l2_drift, std::abs(1.0 - lp_norm(traj[i], 2.0) / f0_l2));
    }
  }
  return probe;
}

}  // namespace ekman
