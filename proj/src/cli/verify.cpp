#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

#include <Eigen/Dense>

#include "ekman/cli.hpp"

namespace ekman::cli {

namespace {

GridSpec grid_of(int n) {
  GridSpec g;
  g.n = n;
  return g;
}

// Random coefficients on |kx|, |ky| <= k_limit.
ScalarField random_field(const GridSpec& grid, int k_limit, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int n = grid.n;
  k_limit = std::min(k_limit, n / 2);
  ComplexGrid s = ComplexGrid::Zero(n, grid.half());
  for (int kx = -k_limit; kx <= k_limit; ++kx) {
    for (int ky = 0; ky <= k_limit; ++ky) {
      const double re = unit(rng);
      s((kx + n) % n, ky) = {re, unit(rng)};
    }
  }
  return ScalarField::from_spectrum(grid, s);
}

VectorField random_vector(const GridSpec& grid, int k_limit, std::uint64_t seed) {
  return make_vector(random_field(grid, k_limit, seed), random_field(grid, k_limit, seed + 7919));
}

ScalarField random_density(const GridSpec& g, double lo, double hi, std::uint64_t seed) {
  const auto r = random_field(g, 3, seed);
  const double a = r.min();
  const double b = r.max();
  return map(r, [=](double v) { return lo + (hi - lo) * (v - a) / (b - a); });
}

VerifyCheck upper_bound(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value, threshold, value <= threshold, std::move(detail)};
}

VerifyCheck partition_check(const DyadicFilterBank& bank) {
  return upper_bound("partition of unity N=" + std::to_string(bank.grid().n), partition_of_unity_residual(bank),
                     1e-14);
}

VerifyCheck bony_check(const DyadicFilterBank& bank, int pairs) {
  const GridSpec& g = bank.grid();
  double worst = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const auto a = random_field(g, g.k_max() / 2, 2 * i);
    const auto b = random_field(g, g.k_max() / 2, 2 * i + 1);
    const ScalarField sum = paraproduct(bank, a, b) + paraproduct(bank, b, a) + remainder(bank, a, b);
    worst = std::max(worst, lp_norm(product(a, b) - sum, kInf) / (lp_norm(a, kInf) * lp_norm(b, kInf)));
  }
  return upper_bound("Bony identity N=" + std::to_string(g.n), worst, 1e-10, std::to_string(pairs) + " pairs");
}

// Largest max(r, 1/r) of ||grad Delta_j f|| / (2^j ||Delta_j f||) over interior blocks.
VerifyCheck bernstein_check(const DyadicFilterBank& bank) {
  const GridSpec& g = bank.grid();
  double worst = 1.0;
  for (int j = 1; j <= bank.j_max() - 1; ++j) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto f = dyadic_block(bank, random_field(g, g.k_max(), 100 * seed + j), j);
      for (double p : {2.0, kInf}) {
        const double r = lp_norm(gradient(f), p) / (std::ldexp(1.0, j) * lp_norm(f, p));
        worst = std::max({worst, r, 1.0 / r});
      }
    }
  }
  return upper_bound("Bernstein ratios N=" + std::to_string(g.n), worst, 8.0);
}

VerifyCheck lax_milgram(int instances) {
  const GridSpec g = grid_of(32);
  double worst = 0.0;
  for (int i = 0; i < instances; ++i) {
    const auto rho = random_density(g, 0.7, 1.3, i);
    const auto F = random_vector(g, 8, 1000 + i);
    const auto sol = solve_pressure(rho, F);
    worst = std::max(worst, lax_milgram_check(rho, F, sol.gradient));
  }
  return upper_bound("Lax-Milgram ratio", worst, 1.0 + 1e-8, std::to_string(instances) + " instances");
}

SimConfig tg_config(int n, double dt, double t_end) {
  SimConfig c;
  c.grid = grid_of(n);
  c.alpha = 0.5;
  c.dt = dt;
  c.t_end = t_end;
  return c;
}

VerifyCheck tg_regression(int n) {
  const SimConfig c = tg_config(n, 1e-2, 2.0);
  const auto r = run_simulation(c);
  if (!r.completed) return {"Taylor-Green decay N=" + std::to_string(n), kInf, 1e-6, false, r.failure};
  const VectorField exact = taylor_green(c.grid, std::exp(-c.alpha * c.t_end));
  return upper_bound("Taylor-Green decay N=" + std::to_string(n), lp_norm(r.final_state.u - exact, kInf), 1e-6);
}

VerifyCheck energy_balance(int n) {
  SimConfig c = tg_config(n, 2.5e-3, 1.0);
  c.gamma = 0;
  c.u0.amplitude = 0.5;
  c.rho0.kind = DensityPreset::Kind::single_mode;
  c.rho0.amplitude = 0.2;
  const auto r = run_simulation(c);
  if (!r.completed) return {"energy balance gamma=0", kInf, 1e-5, false, r.failure};
  return upper_bound("energy balance gamma=0", energy_balance_residual(r.records, c.gamma, c.alpha), 1e-5);
}

VerifyCheck resolution_consistency() {
  SimConfig c = tg_config(64, 1e-2, 0.5);
  c.record_every = 5;
  c.rho0.kind = DensityPreset::Kind::single_mode;
  c.rho0.amplitude = 0.2;
  const auto coarse = run_simulation(c);
  c.grid = grid_of(128);
  const auto fine = run_simulation(c);
  if (!coarse.completed || !fine.completed) return {"N=64 vs N=128 consistency", kInf, 1e-6, false, "run failed"};
  double worst = 0.0;
  for (std::size_t i = 0; i < coarse.records.size(); ++i) {
    const auto& a = coarse.records[i];
    const auto& b = fine.records[i];
    worst = std::max({worst, std::abs(a.energy - b.energy) / b.energy,
                      std::abs(a.besov_rho_minus_1 - b.besov_rho_minus_1) / b.besov_rho_minus_1});
  }
  return upper_bound("N=64 vs N=128 consistency", worst, 1e-6, "energy and density norm");
}

Eigen::MatrixXd fourier_diff_matrix(int n) {
  const double h = 2.0 * std::numbers::pi / n;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) D(i, j) = 0.5 * ((i - j) % 2 == 0 ? 1.0 : -1.0) / std::tan((i - j) * h / 2.0);
    }
  }
  return D;
}

VerifyCheck dense_oracle() {
  const int n = 16;
  const GridSpec g = grid_of(n);
  const auto rho = ScalarField::sample(g, [](double x, double) { return 1.0 + 0.2 * std::cos(x); });
  const auto F = random_vector(g, g.k_max(), 60);
  PressureSolveParams params;
  params.tol = 1e-12;
  const auto sol = solve_pressure(rho, F, params);

  const Eigen::MatrixXd D = fourier_diff_matrix(n);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd Dx(n * n, n * n), Dy(n * n, n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Dx.block(a * n, b * n, n, n) = D(a, b) * I;
      Dy.block(a * n, b * n, n, n) = I(a, b) * D;
    }
  }
  auto flat = [](const ScalarField& f) {
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(f.values().data(), f.values().size()));
  };
  const Eigen::VectorXd inv = flat(rho).cwiseInverse();
  const Eigen::MatrixXd A = -(Dx * inv.asDiagonal() * Dx + Dy * inv.asDiagonal() * Dy);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
  cod.setThreshold(1e-10);
  const Eigen::VectorXd p = cod.solve(Dx * flat(F[0]) + Dy * flat(F[1]));
  const double err = (flat(sol.pressure) - p).cwiseAbs().maxCoeff() / p.cwiseAbs().maxCoeff();
  return upper_bound("dense elliptic oracle N=16", err, 1e-8);
}

}  // namespace

std::vector<VerifyCheck> run_verification(const VerifyOptions& options) {
  std::vector<VerifyCheck> checks;
  std::vector<int> sizes{64};
  if (options.full) sizes.push_back(128);
  for (int n : sizes) {
    DyadicFilterBank bank(grid_of(n));
    if (options.inject_fault) bank = bank.with_perturbed_block(2, 1e-3);
    checks.push_back(partition_check(bank));
    checks.push_back(bony_check(bank, options.full ? 100 : 20));
    checks.push_back(bernstein_check(bank));
  }
  checks.push_back(lax_milgram(options.full ? 50 : 10));
  checks.push_back(tg_regression(64));
  checks.push_back(energy_balance(64));
  if (options.full) {
    checks.push_back(tg_regression(128));
    checks.push_back(resolution_consistency());
    checks.push_back(dense_oracle());
  }
  return checks;
}

int cmd_verify(const std::string& level, bool inject_fault, std::ostream& out, std::ostream& err) {
  if (level != "quick" && level != "full") {
    err << "config error: --level must be quick or full\n";
    return kConfigError;
  }
  const auto start = std::chrono::steady_clock::now();
  const auto checks = run_verification({level == "full", inject_fault});
  bool all = true;
  char line[256];
  std::snprintf(line, sizeof line, "%-32s %-12s %-12s %s\n", "check", "value", "threshold", "result");
  out << line;
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%-32s %-12.4e %-12.4e %s", c.name.c_str(), c.value, c.threshold,
                  c.pass ? "PASS" : "FAIL");
    out << line;
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << '\n';
    all = all && c.pass;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out << (all ? "all checks passed" : "some checks FAILED") << " in " << secs << " s\n";
  return all ? kOk : kInvariantAbort;
}

}  // namespace ekman::cli
