#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ekman/diagnostics.hpp"
#include "ekman/dynamics.hpp"
#include "support.hpp"

using namespace ekman;
using ekman::testing::grid_of;

namespace {

SimConfig tg_config(int n, double alpha, double dt, double t_end, int record_every) {
  SimConfig c;
  c.grid = grid_of(n);
  c.alpha = alpha;
  c.gamma = 1;
  c.dt = dt;
  c.t_end = t_end;
  c.record_every = record_every;
  return c;
}

std::vector<double> column(const std::vector<DiagnosticsRecord>& rs, double DiagnosticsRecord::*m) {
  std::vector<double> out;
  for (const auto& r : rs) out.push_back(r.*m);
  return out;
}

// Closed formulas evaluated independently of the library.
double gamma1_general_oracle(double ub, double ul2, double rb, double a, double K, double eta) {
  return ub / a * std::exp((1 + std::pow(rb, eta)) * std::exp(K) * (ul2 / a + 1));
}

}  // namespace

TEST_CASE("decay fit") {
  std::vector<double> t, v, c, noisy;
  for (int i = 0; i <= 20; ++i) {
    t.push_back(0.1 * i);
    v.push_back(std::exp(-2.0 * t.back()));
    c.push_back(3.0);
    noisy.push_back(std::exp(-t.back()) * (1.0 + 0.05 * ((i % 3) - 1)));
  }
  const auto fit = fit_decay_rate(t, v, 0.0, 2.0);
  CHECK(fit.rate == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.t_lo == 0.0);
  CHECK(fit.t_hi == doctest::Approx(2.0));
  const auto flat = fit_decay_rate(t, c, 0.0, 2.0);
  CHECK(flat.rate == doctest::Approx(0.0));
  CHECK(flat.r_squared == 1.0);
  const auto nf = fit_decay_rate(t, noisy, 0.0, 2.0);
  CHECK(nf.r_squared < 1.0);
  CHECK(nf.r_squared > 0.9);
  CHECK_THROWS_AS(fit_decay_rate(t, v, 0.0, 0.35), std::invalid_argument);
  auto bad = v;
  bad[5] = 0.0;
  CHECK_THROWS_AS(fit_decay_rate(t, bad, 0.0, 2.0), std::invalid_argument);
  CHECK_NOTHROW(fit_decay_rate(t, bad, 1.0, 2.0));
}

TEST_CASE("smallness: gamma1_general") {
  SmallnessParams p;
  const auto zero = smallness_gamma1_general({0.0, 0.3, 0.2}, 1.0, p);
  CHECK(zero.lhs[0] == 0.0);
  CHECK(zero.satisfied);
  const auto r = smallness_gamma1_general({0.1, 0.1, 0.0}, 1.0, p);
  CHECK(r.lhs[0] == doctest::Approx(1.9887870261782965).epsilon(1e-12));
  CHECK(r.lhs[0] == doctest::Approx(gamma1_general_oracle(0.1, 0.1, 0.0, 1.0, 1.0, 2.0)).epsilon(1e-12));
  CHECK(r.satisfied);
  CHECK(r.thresholds == std::vector<double>{2.0});
  CHECK(r.theorem_id == "gamma1_general");
  CHECK(r.K == 1.0);
  CHECK_THROWS_AS(smallness_gamma1_general({0.1, 0.1, 0.0}, 0.0, p), std::invalid_argument);
}

TEST_CASE("smallness: gamma0_general") {
  SmallnessParams p;
  const auto zero = smallness_gamma0_general({0.0, 0.0, 0.5}, 1.0, p);
  CHECK(zero.lhs == std::vector<double>{0.0, 0.0});
  CHECK(zero.satisfied);
  // ||u0||_{L2 cap B1} = 0.5 split as 0.2 + 0.3.
  const auto r = smallness_gamma0_general({0.3, 0.2, 0.0}, 1.0, p);
  CHECK(r.lhs[0] == doctest::Approx(1.3591409142295225).epsilon(1e-12));
  CHECK(r.lhs[1] == doctest::Approx(0.67957045711476127).epsilon(1e-12));
  CHECK(r.thresholds == std::vector<double>{2.0, 4.0});
  CHECK(r.satisfied);
  p.K = 2.0;
  const auto big = smallness_gamma0_general({0.3, 0.2, 0.0}, 1.0, p);
  CHECK(big.lhs[0] == doctest::Approx(2.0 * std::exp(2.0) * 0.5).epsilon(1e-12));
  CHECK_FALSE(big.satisfied);
  CHECK_THROWS_AS(smallness_gamma0_general({0.3, 0.2, 0.0}, -1.0, p), std::invalid_argument);
}

TEST_CASE("smallness: gamma1_2d") {
  SmallnessParams p;
  const auto homog = smallness_gamma1_2d({50.0, 40.0, 0.0}, 1.0, p);
  CHECK(homog.lhs[0] == 0.0);
  CHECK(homog.satisfied);
  const auto r = smallness_gamma1_2d({0.6, 0.4, 0.01}, 1.0, p);
  CHECK(r.lhs[0] == doctest::Approx(1.1197569385089039).epsilon(1e-12));
  CHECK(r.thresholds == std::vector<double>{4.0});
  CHECK(r.satisfied);
  CHECK(r.eta == doctest::Approx(5.01));
  p.eta_2d = 5.0;
  CHECK_THROWS_AS(smallness_gamma1_2d({0.6, 0.4, 0.01}, 1.0, p), std::invalid_argument);
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("smallness monotonicity sweeps") {
  const SmallnessParams p;
  using Eval = ConditionReport (*)(const InitialNorms&, double, const SmallnessParams&);
  const Eval evals[] = {smallness_gamma1_general, smallness_gamma0_general, smallness_gamma1_2d};
  const InitialNorms base{0.3, 0.2, 0.05};
  for (Eval ev : evals) {
    for (int arg = 0; arg < 3; ++arg) {
      std::vector<std::vector<double>> lhs;
      for (double scale : {1.0, 1.5, 2.0}) {
        InitialNorms n = base;
        if (arg == 0) n.u_besov *= scale;
        if (arg == 1) n.u_l2 *= scale;
        if (arg == 2) n.rho_besov *= scale;
        lhs.push_back(ev(n, 1.0, p).lhs);
      }
      for (std::size_t k = 0; k < lhs[0].size(); ++k) {
        CHECK(lhs[1][k] > lhs[0][k]);
        CHECK(lhs[2][k] > lhs[1][k]);
      }
    }
    std::vector<std::vector<double>> by_alpha;
    for (double a : {0.5, 1.0, 2.0}) by_alpha.push_back(ev(base, a, p).lhs);
    for (std::size_t k = 0; k < by_alpha[0].size(); ++k) {
      CHECK(by_alpha[1][k] < by_alpha[0][k]);
      CHECK(by_alpha[2][k] < by_alpha[1][k]);
    }
  }
}

TEST_CASE("beta0") {
  CHECK(beta0(1.0, 1.0, 2.0, 2, 0.01) == doctest::Approx(0.24937655860349128).epsilon(1e-12));
  double prev = kInf;
  for (double rho_upper : {1.0, 2.0, 10.0, 1e3}) {
    const double b = beta0(0.7, rho_upper, 1.0, 2, 0.01);
    CHECK(b > 0.0);
    CHECK(b < 0.7 / rho_upper);
    CHECK(b < prev);
    prev = b;
  }
  CHECK_THROWS_AS(beta0(0.0, 1.0, 1.0, 2, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(beta0(1.0, 1.0, 0.5, 2, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(beta0(1.0, -1.0, 1.0, 2, 0.01), std::invalid_argument);
}

TEST_CASE("records and initial norms for Taylor-Green") {
  const SimConfig c = tg_config(32, 0.5, 1e-2, 0.0, 1);
  const FluidState s = initial_state(c);
  const DyadicFilterBank bank(c.grid);
  const auto rec = make_record(s, bank, c.besov_indices);
  // TG sits at |k| = sqrt 2, split between blocks 0 and 1 by chi(sqrt 2).
  const double tg_besov = 1.2892098153329687;
  CHECK(rec.l2_u == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(rec.energy == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(rec.grad_u_inf == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  REQUIRE(rec.besov_u.size() == 1);
  CHECK(rec.besov_u[0] == doctest::Approx(tg_besov).epsilon(1e-13));
  CHECK(rec.besov_rho_minus_1 == 0.0);
  CHECK(rec.rho_min == 1.0);
  CHECK(rec.rho_max == 1.0);
  CHECK(rec.bkm_running == 0.0);
  // grad Pi = -(sin 2x, sin 2y) / 2: |grad Pi|^2 averages to 1/4.
  CHECK(rec.l2_grad_pressure == doctest::Approx(0.5).epsilon(1e-13));

  const auto norms = initial_norms(bank, s.rho, s.u);
  CHECK(norms.u_besov == doctest::Approx(tg_besov).epsilon(1e-13));
  CHECK(norms.u_l2 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(norms.rho_besov == 0.0);
  CHECK(norms.u_intersection() == doctest::Approx(tg_besov + std::sqrt(0.5)).epsilon(1e-13));
}

TEST_CASE("BKM monitoring") {
  SUBCASE("zero flow") {
    SimConfig c = tg_config(16, 0.5, 0.1, 1.0, 1);
    c.u0.kind = VelocityPreset::Kind::zero;
    const auto r = run_simulation(c);
    const auto rep = bkm_report(r.records);
    CHECK(rep.integral == 0.0);
    CHECK(energy_balance_residual(r.records, 1, 0.5) == 0.0);
  }
  SUBCASE("Taylor-Green integral") {
    const auto r = run_simulation(tg_config(16, 0.5, 0.02, 10.0, 5));
    REQUIRE(r.completed);
    const auto rep = bkm_report(r.records);
    const double limit = 2.0 * std::sqrt(2.0);
    CHECK(std::abs(rep.integral / limit - 1.0) <= 0.01);
    CHECK(rep.integral == doctest::Approx(r.records.back().bkm_running).epsilon(1e-12));
    for (double inc : rep.increments) CHECK(inc >= 0.0);
    CHECK(rep.tail_decaying);
    CHECK(rep.max_tail_ratio < 1.0);
    const auto bkm = column(r.records, &DiagnosticsRecord::bkm_running);
    for (std::size_t i = 1; i < bkm.size(); ++i) CHECK(bkm[i] >= bkm[i - 1]);
  }
  CHECK_THROWS_AS(bkm_report(std::vector<DiagnosticsRecord>(1)), std::invalid_argument);
}

TEST_CASE("energy balance") {
  SUBCASE("Taylor-Green") {
    const auto r = run_simulation(tg_config(32, 0.5, 1e-3, 1.0, 1));
    REQUIRE(r.completed);
    CHECK(energy_balance_residual(r.records, 1, 0.5) <= 1e-6);
    const auto l2 = column(r.records, &DiagnosticsRecord::l2_u);
    const auto t = column(r.records, &DiagnosticsRecord::t);
    CHECK(fit_decay_rate(t, l2, 0.5, 1.0).rate == doctest::Approx(0.5).epsilon(1e-6));
  }
  SUBCASE("nonuniform spacing") {
    std::vector<DiagnosticsRecord> rs(4);
    for (int i = 0; i < 4; ++i) {
      rs[i].t = i * i * 0.1;
      rs[i].energy = 1.0;
    }
    CHECK_THROWS_AS(energy_balance_residual(rs, 1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(energy_balance_residual(std::vector<DiagnosticsRecord>(2), 1, 0.5), std::invalid_argument);
  }
}
