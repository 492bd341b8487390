#include "ekman/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ekman {

namespace {

const BesovIndex kLipschitzIndex{1.0, kInf, 1.0};

void require_positive_alpha(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
}

}  // namespace

DiagnosticsRecord make_record(const FluidState& state, const DyadicFilterBank& bank,
                              std::span<const BesovIndex> tracked,
                              const DiagnosticsRecord* previous) {
  DiagnosticsRecord rec;
  rec.t = state.t;
  rec.l2_u = lp_norm(state.u, 2.0);
  rec.l2_grad_pressure = lp_norm(state.grad_pressure, 2.0);
  for (const auto& idx : tracked) {
    rec.besov_u.push_back(besov_norm(bank, state.u, idx));
    rec.besov_grad_pressure.push_back(besov_norm(bank, state.grad_pressure, idx));
  }
  rec.besov_rho_minus_1 = besov_norm(bank, state.rho + (-1.0), kLipschitzIndex);
  rec.rho_min = state.rho.min();
  rec.rho_max = state.rho.max();
  RealGrid speed2 = RealGrid::Zero(state.rho.grid().n, state.rho.grid().n);
  for (const auto& c : state.u.components) speed2 += c.values().square();
  rec.energy = 0.5 * (state.rho.values() * speed2).mean();
  rec.grad_u_inf = gradient_sup_norm(state.u);
  if (previous != nullptr) {
    rec.bkm_running = previous->bkm_running +
                      0.5 * (rec.t - previous->t) * (rec.grad_u_inf + previous->grad_u_inf);
  }
  return rec;
}

DecayFit fit_decay_rate(std::span<const double> times, std::span<const double> values, double t_lo,
                        double t_hi) {
  if (times.size() != values.size()) throw std::invalid_argument("fit_decay_rate: length mismatch");
  std::vector<double> ts, ys;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_lo || times[i] > t_hi) continue;
    if (!(values[i] > 0.0)) throw std::invalid_argument("fit_decay_rate: nonpositive value in window");
    ts.push_back(times[i]);
    ys.push_back(std::log(values[i]));
  }
  if (ts.size() < 5) throw std::invalid_argument("fit_decay_rate: fewer than 5 points in window");
  const double m = static_cast<double>(ts.size());
  double tm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    tm += ts[i];
    ym += ys[i];
  }
  tm /= m;
  ym /= m;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    stt += (ts[i] - tm) * (ts[i] - tm);
    sty += (ts[i] - tm) * (ys[i] - ym);
    syy += (ys[i] - ym) * (ys[i] - ym);
  }
  if (stt == 0.0) throw std::invalid_argument("fit_decay_rate: window has no time extent");
  const double slope = sty / stt;
  DecayFit fit;
  fit.rate = -slope;
  fit.intercept = ym - slope * tm;
  // A flat series is fit exactly.
  fit.r_squared = syy <= 1e-300 ? 1.0 : std::clamp(sty * sty / (stt * syy), 0.0, 1.0);
  fit.t_lo = ts.front();
  fit.t_hi = ts.back();
  return fit;
}

InitialNorms initial_norms(const DyadicFilterBank& bank, const ScalarField& rho0,
                           const VectorField& u0) {
  return {besov_norm(bank, u0, kLipschitzIndex), lp_norm(u0, 2.0),
          besov_norm(bank, rho0 + (-1.0), kLipschitzIndex)};
}

void SmallnessParams::validate() const {
  if (!(K > 0.0)) throw std::invalid_argument("smallness.K: must be positive");
  if (!(eta > 0.0)) throw std::invalid_argument("smallness.eta: must be positive");
  if (!(eta_2d > 5.0)) throw std::invalid_argument("smallness.eta_2d: must exceed 5");
  if (!(delta > 0.0)) throw std::invalid_argument("smallness.delta: must be positive");
}

ConditionReport smallness_gamma1_general(const InitialNorms& norms, double alpha,
                                         const SmallnessParams& params) {
  require_positive_alpha(alpha);
  const double heterogeneity = 1.0 + std::pow(norms.rho_besov, params.eta);
  const double lhs = norms.u_besov / alpha *
                     std::exp(heterogeneity * std::exp(params.K) * (norms.u_l2 / alpha + 1.0));
  return {"gamma1_general", {lhs}, {2.0}, lhs < 2.0, alpha, params.K, params.eta, norms};
}

ConditionReport smallness_gamma0_general(const InitialNorms& norms, double alpha,
                                         const SmallnessParams& params) {
  require_positive_alpha(alpha);
  const double R = 1.0 + std::pow(norms.rho_besov, params.eta);
  const double u = norms.u_intersection();
  const double growth = std::exp(params.K * R);
  const double first = params.K * R * growth * u / alpha;
  const double second = params.K * R * R * R * growth * u * u / alpha;
  return {"gamma0_general", {first, second}, {2.0, 4.0}, first < 2.0 && second < 4.0,
          alpha, params.K, params.eta, norms};
}

ConditionReport smallness_gamma1_2d(const InitialNorms& norms, double alpha,
                                    const SmallnessParams& params) {
  require_positive_alpha(alpha);
  if (!(params.eta_2d > 5.0)) throw std::invalid_argument("gamma1_2d: eta must exceed 5");
  const double z = norms.u_intersection();
  const double k_over_a = params.K / alpha;
  double lhs = 0.0;
  // Homogeneous data satisfy the condition for any velocity, even where phi overflows.
  if (norms.rho_besov > 0.0) {
    const double phi = std::exp(2.0 * k_over_a * z) * std::exp(params.K * std::exp(k_over_a * z));
    lhs = norms.rho_besov * (1.0 + std::pow(norms.rho_besov, params.eta_2d)) * z * phi;
  }
  return {"gamma1_2d", {lhs}, {4.0}, lhs < 4.0, alpha, params.K, params.eta_2d, norms};
}

double beta0(double alpha, double rho_upper, double s, int d, double delta) {
  if (!(alpha > 0.0) || !(rho_upper > 0.0) || !(s >= 1.0) || d < 1 || !(delta > 0.0)) {
    throw std::invalid_argument("beta0: need alpha > 0, rho_upper > 0, s >= 1, d >= 1, delta > 0");
  }
  const double sigma = d / 2.0 + delta;
  const double theta0 = 1.0 / (s + sigma);
  return theta0 / (1.0 + theta0) * alpha / rho_upper;
}

BkmReport bkm_report(std::span<const DiagnosticsRecord> records) {
  if (records.size() < 2) throw std::invalid_argument("bkm_report: need at least 2 records");
  BkmReport rep;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& a = records[i - 1];
    const auto& b = records[i];
    const double inc = 0.5 * (b.t - a.t) * (a.grad_u_inf + b.grad_u_inf);
    rep.increments.push_back(inc);
    rep.integral += inc;
  }
  const std::size_t m = rep.increments.size();
  if (m >= 6) {
    rep.tail_decaying = true;
    for (std::size_t i = m - 5; i < m; ++i) {
      const double prev = rep.increments[i - 1];
      const double ratio = prev > 0.0 ? rep.increments[i] / prev : (rep.increments[i] > 0.0 ? kInf : 0.0);
      rep.max_tail_ratio = std::max(rep.max_tail_ratio, ratio);
      if (!(ratio < 1.0)) rep.tail_decaying = false;
    }
  }
  return rep;
}

double energy_balance_residual(std::span<const DiagnosticsRecord> records, int gamma, double alpha) {
  if (records.size() < 3) throw std::invalid_argument("energy_balance_residual: need at least 3 records");
  if (gamma != 0 && gamma != 1) throw std::invalid_argument("energy_balance_residual: gamma must be 0 or 1");
  const double dt = records[1].t - records[0].t;
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (std::abs((records[i].t - records[i - 1].t) - dt) > 1e-9 * std::max(1.0, std::abs(dt))) {
      throw std::invalid_argument("energy_balance_residual: records are not uniformly spaced");
    }
  }
  const double scale = (alpha > 0.0 ? alpha : 1.0) * records.front().energy;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < records.size(); ++i) {
    const double dEdt = (records[i + 1].energy - records[i - 1].energy) / (2.0 * dt);
    // mean(rho |u|^2) = 2E when gamma = 1; mean(|u|^2) = ||u||_{L^2}^2 when gamma = 0.
    const double dissipation = gamma == 1 ? 2.0 * records[i].energy : records[i].l2_u * records[i].l2_u;
    worst = std::max(worst, std::abs(dEdt + alpha * dissipation));
  }
  if (scale == 0.0) return worst == 0.0 ? 0.0 : kInf;
  return worst / scale;
}

}  // namespace ekman
