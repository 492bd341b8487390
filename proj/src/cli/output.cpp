#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "ekman/cli.hpp"

#ifndef EKMAN_VERSION
#define EKMAN_VERSION "0.0.0"
#endif

namespace ekman::cli {

using nlohmann::json;

namespace {

// JSON has no infinity or NaN; those become strings.
json number_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json numbers_json(const std::vector<double>& vs) {
  json a = json::array();
  for (double v : vs) a.push_back(number_json(v));
  return a;
}

std::vector<double> column(const std::vector<DiagnosticsRecord>& rs, double DiagnosticsRecord::*field) {
  std::vector<double> out;
  out.reserve(rs.size());
  for (const auto& r : rs) out.push_back(r.*field);
  return out;
}

// Evaluates f, reporting a std::exception as {"error": what}.
template <class F>
json guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return json{{"error", e.what()}};
  }
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

std::vector<std::string> csv_columns(std::size_t tracked) {
  std::vector<std::string> cols{"t", "l2_u"};
  for (std::size_t i = 0; i < tracked; ++i) cols.push_back("besov_u_" + std::to_string(i));
  cols.emplace_back("l2_gradPi");
  for (std::size_t i = 0; i < tracked; ++i) cols.push_back("besov_gradPi_" + std::to_string(i));
  for (const char* c : {"besov_rho_minus_1", "rho_min", "rho_max", "energy", "grad_u_inf", "bkm_running"}) {
    cols.emplace_back(c);
  }
  return cols;
}

void write_records_csv(std::ostream& os, const std::vector<DiagnosticsRecord>& records, std::size_t tracked) {
  const auto cols = csv_columns(tracked);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& r : records) {
    if (r.besov_u.size() != tracked || r.besov_grad_pressure.size() != tracked) {
      throw std::invalid_argument("write_records_csv: record does not match the tracked indices");
    }
    std::vector<double> row{r.t, r.l2_u};
    row.insert(row.end(), r.besov_u.begin(), r.besov_u.end());
    row.push_back(r.l2_grad_pressure);
    row.insert(row.end(), r.besov_grad_pressure.begin(), r.besov_grad_pressure.end());
    row.insert(row.end(), {r.besov_rho_minus_1, r.rho_min, r.rho_max, r.energy, r.grad_u_inf, r.bkm_running});
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
}

void write_records_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRecord>& records,
                       std::size_t tracked) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error(path.string() + ": cannot open for writing");
  write_records_csv(os, records, tracked);
  if (!os) throw std::runtime_error(path.string() + ": write failed");
}

json to_json(const ConditionReport& r) {
  return {{"theorem_id", r.theorem_id},
          {"lhs", numbers_json(r.lhs)},
          {"thresholds", numbers_json(r.thresholds)},
          {"satisfied", r.satisfied},
          {"alpha", r.alpha},
          {"K", r.K},
          {"eta", r.eta},
          {"norms",
           {{"u_besov", r.norms.u_besov}, {"u_l2", r.norms.u_l2}, {"rho_besov", r.norms.rho_besov}}}};
}

json to_json(const DecayFit& f) {
  return {{"rate", number_json(f.rate)},
          {"intercept", number_json(f.intercept)},
          {"r_squared", number_json(f.r_squared)},
          {"t_lo", f.t_lo},
          {"t_hi", f.t_hi}};
}

json to_json(const BkmReport& r) {
  return {{"integral", number_json(r.integral)},
          {"increments", numbers_json(r.increments)},
          {"tail_decaying", r.tail_decaying},
          {"max_tail_ratio", number_json(r.max_tail_ratio)}};
}

CheckOutcome evaluate_conditions(const RunConfig& config) {
  const SimConfig& sim = config.sim;
  CheckOutcome out;
  if (!(sim.alpha > 0.0)) {
    out.note = "no condition applies without damping (physics.alpha = 0)";
    return out;
  }
  const DyadicFilterBank bank(sim.grid);
  const VectorField u0 = leray_project(dealias(make_velocity(sim.grid, sim.u0)));
  const ScalarField rho0 = make_density(sim.grid, sim.rho0);
  const InitialNorms norms = initial_norms(bank, rho0, u0);
  if (sim.gamma == 1) {
    out.reports.push_back(smallness_gamma1_2d(norms, sim.alpha, config.smallness));
    out.reports.push_back(smallness_gamma1_general(norms, sim.alpha, config.smallness));
    out.satisfied = out.reports[0].satisfied || out.reports[1].satisfied;
  } else {
    out.reports.push_back(smallness_gamma0_general(norms, sim.alpha, config.smallness));
    out.satisfied = out.reports[0].satisfied;
  }
  return out;
}

json summarize(const RunConfig& config, const SimulationResult& result) {
  const SimConfig& sim = config.sim;
  const auto& rs = result.records;
  json s;
  s["version"] = EKMAN_VERSION;
  s["completed"] = result.completed;
  s["failure"] = result.failure.empty() ? json(nullptr) : json(result.failure);
  s["steps"] = result.steps;
  s["records"] = rs.size();
  s["t_final"] = rs.empty() ? 0.0 : rs.back().t;
  s["cfl"] = number_json(sim.cfl_number(leray_project(dealias(make_velocity(sim.grid, sim.u0)))));

  const double t_hi = rs.empty() ? 0.0 : rs.back().t;
  const auto t = column(rs, &DiagnosticsRecord::t);
  json fits;
  fits["l2_u"] = guarded([&] {
    return to_json(fit_decay_rate(t, column(rs, &DiagnosticsRecord::l2_u), 0.5 * t_hi, t_hi));
  });
  fits["l2_gradPi"] = guarded([&] {
    return to_json(fit_decay_rate(t, column(rs, &DiagnosticsRecord::l2_grad_pressure), 0.5 * t_hi, t_hi));
  });
  s["decay_fits"] = fits;
  s["energy_residual"] =
      guarded([&] { return number_json(energy_balance_residual(rs, sim.gamma, sim.alpha)); });
  s["bkm"] = guarded([&] { return to_json(bkm_report(rs)); });

  const CheckOutcome check = evaluate_conditions(config);
  json reports = json::array();
  for (const auto& r : check.reports) reports.push_back(to_json(r));
  s["conditions"] = {{"reports", reports}, {"satisfied", check.satisfied}};
  if (!check.note.empty()) s["conditions"]["note"] = check.note;
  s["config"] = to_json(config);
  return s;
}

}  // namespace ekman::cli
