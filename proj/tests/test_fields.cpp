#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ekman/field.hpp"
#include "ekman/presets.hpp"
#include "support.hpp"

using namespace ekman;
using ekman::testing::grid_of;
using ekman::testing::max_abs_diff;

namespace {

double rel_l2(const ScalarField& a, const ScalarField& b) {
  const double denom = lp_norm(b, 2.0);
  return lp_norm(a - b, 2.0) / (denom > 0.0 ? denom : 1.0);
}

double rel_l2(const VectorField& a, const VectorField& b) {
  const double denom = lp_norm(b, 2.0);
  return lp_norm(a - b, 2.0) / (denom > 0.0 ? denom : 1.0);
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_NOTHROW(grid_of(8).validate());
  CHECK_NOTHROW(grid_of(256).validate());
  CHECK_THROWS_AS(grid_of(4).validate(), std::invalid_argument);
  CHECK_THROWS_AS(grid_of(48).validate(), std::invalid_argument);
  GridSpec g = grid_of(8);
  g.dealias_fraction = 0.4;  // k_max = floor(1.6) = 1
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = grid_of(64);
  g.dim = 3;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  CHECK(grid_of(64).k_max() == 21);
}

TEST_CASE("transform round trip") {
  for (int n : {8, 32, 64, 128}) {
    const GridSpec g = grid_of(n);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      // Arbitrary samples, so every mode including Nyquist is populated.
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> normal;
      RealGrid v(n, n);
      for (Eigen::Index i = 0; i < v.size(); ++i) v.data()[i] = normal(rng);
      const ScalarField f = ScalarField::from_values(g, v);
      const ScalarField back = ScalarField::from_spectrum(g, f.spectrum());
      CHECK(max_abs_diff(back.values(), v) <= 1e-12 * v.abs().maxCoeff());
    }
  }
}

TEST_CASE("spectrum is Hermitian on the self-conjugate columns") {
  const GridSpec g = grid_of(16);
  const ScalarField f = ekman::testing::random_band_limited(g, 8, 3);
  const auto& s = f.spectrum();
  for (int col : {0, 8}) {
    for (int i = 0; i < 16; ++i) CHECK(std::abs(s(i, col) - std::conj(s((16 - i) % 16, col))) <= 1e-15);
  }
  CHECK(f.values().allFinite());
}

TEST_CASE("gradient") {
  const GridSpec g = grid_of(64);
  SUBCASE("constant") {
    const VectorField gr = gradient(ScalarField::constant(g, 3.0));
    CHECK(lp_norm(gr, kInf) <= 1e-14);
  }
  SUBCASE("single mode") {
    const auto f = ScalarField::sample(g, [](double x, double) { return std::sin(x); });
    const VectorField gr = gradient(f);
    const auto expect = ScalarField::sample(g, [](double x, double) { return std::cos(x); });
    CHECK(max_abs_diff(gr[0].values(), expect.values()) <= 1e-13);
    CHECK(gr[1].values().abs().maxCoeff() <= 1e-13);
  }
  SUBCASE("finite-difference oracle at N=256") {
    const GridSpec fine = grid_of(256);
    const auto f = ScalarField::sample(fine, [](double x, double y) { return std::sin(2 * x) * std::cos(3 * y); });
    const VectorField gr = gradient(f);
    const double h = fine.spacing();
    CHECK(max_abs_diff(gr[0].values(), ekman::testing::fd_derivative(f.values(), 0, h)) <= 1e-6);
    CHECK(max_abs_diff(gr[1].values(), ekman::testing::fd_derivative(f.values(), 1, h)) <= 1e-6);
  }
}

TEST_CASE("spectral derivative agrees with 4th-order differences at O(h^4)") {
  auto fn = [](double x, double y) { return std::exp(std::sin(x)) * std::cos(y); };
  double prev = 0.0;
  for (int n : {32, 64, 128}) {
    const GridSpec g = grid_of(n);
    const auto f = ScalarField::sample(g, fn);
    const double err = max_abs_diff(partial(f, 0).values(),
                                    ekman::testing::fd_derivative(f.values(), 0, g.spacing(), 4));
    if (prev > 0.0) {
      const double order = std::log2(prev / err);
      CHECK(order == doctest::Approx(4.0).epsilon(0.05));
    }
    prev = err;
  }
}

TEST_CASE("divergence") {
  const GridSpec g = grid_of(64);
  SUBCASE("independent components") {
    const VectorField v = make_vector(ScalarField::sample(g, [](double, double y) { return std::cos(y); }),
                                      ScalarField::sample(g, [](double x, double) { return std::sin(x); }));
    CHECK(divergence(v).values().abs().maxCoeff() <= 1e-13);
  }
  SUBCASE("div grad is the Laplacian") {
    const auto f = ScalarField::sample(g, [](double x, double) { return std::sin(x); });
    CHECK(max_abs_diff(divergence(gradient(f)).values(), (-f).values()) <= 1e-12);
    const auto r = ekman::testing::random_dealiased(g, 11);
    CHECK(rel_l2(divergence(gradient(r)), laplacian(r)) <= 1e-13);
  }
  SUBCASE("finite-difference oracle at N=256") {
    const GridSpec fine = grid_of(256);
    const VectorField v = ekman::testing::random_vector(fine, 4, 5);
    const double h = fine.spacing();
    const RealGrid fd = ekman::testing::fd_derivative(v[0].values(), 0, h) +
                        ekman::testing::fd_derivative(v[1].values(), 1, h);
    CHECK(max_abs_diff(divergence(v).values(), fd) <= 1e-6);
  }
}

TEST_CASE("curl2d") {
  const GridSpec g = grid_of(64);
  const VectorField v = make_vector(ScalarField::sample(g, [](double, double y) { return std::cos(y); }),
                                    ScalarField::zero(g));
  const auto sin_y = ScalarField::sample(g, [](double, double y) { return std::sin(y); });
  CHECK(max_abs_diff(curl2d(v).values(), sin_y.values()) <= 1e-13);

  const auto omega = curl2d(taylor_green(g));
  const auto expect = ScalarField::sample(g, [](double x, double y) { return 2.0 * std::sin(x) * std::sin(y); });
  CHECK(max_abs_diff(omega.values(), expect.values()) <= 1e-13);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto f = ekman::testing::random_dealiased(g, seed);
    CHECK(lp_norm(curl2d(gradient(f)), 2.0) <= 1e-12 * lp_norm(gradient(f), 2.0));
  }

  VectorField three = VectorField::zero(g, 3);
  CHECK_THROWS_AS(curl2d(three), std::invalid_argument);
}

TEST_CASE("perp_gradient") {
  const GridSpec g = grid_of(64);
  CHECK(lp_norm(perp_gradient(ScalarField::constant(g, 2.5)), kInf) <= 1e-14);
  const auto f = ScalarField::sample(g, [](double x, double) { return std::sin(x); });
  const VectorField p = perp_gradient(f);
  CHECK(p[0].values().abs().maxCoeff() <= 1e-13);
  CHECK(max_abs_diff(p[1].values(), ScalarField::sample(g, [](double x, double) { return std::cos(x); }).values()) <=
        1e-13);
  CHECK(p.divergence_free);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = ekman::testing::random_band_limited(g, 32, seed);
    const VectorField q = perp_gradient(r);
    CHECK(lp_norm(divergence(q), 2.0) <= 1e-12 * lp_norm(q, 2.0));
  }
}

TEST_CASE("leray projection") {
  const GridSpec g = grid_of(64);
  SUBCASE("fixes divergence-free fields") {
    const VectorField tg = taylor_green(g);
    CHECK(rel_l2(leray_project(tg), tg) <= 1e-12);
  }
  SUBCASE("kills gradients") {
    const auto f = ekman::testing::random_dealiased(g, 21);
    const VectorField gf = gradient(f);
    CHECK(lp_norm(leray_project(gf), 2.0) <= 1e-12 * lp_norm(gf, 2.0));
  }
  SUBCASE("idempotent and divergence-free over 100 random fields") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const VectorField v = ekman::testing::random_vector(g, 32, seed);
      const VectorField p = leray_project(v);
      CHECK(lp_norm(divergence(p), 2.0) <= 1e-12 * lp_norm(p, 2.0));
      CHECK(rel_l2(leray_project(p), p) <= 1e-12);
      CHECK(p.divergence_free);
    }
  }
}

TEST_CASE("lp_norm") {
  const GridSpec g = grid_of(64);
  const auto c = ScalarField::constant(g, -1.75);
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) CHECK(lp_norm(c, p) == doctest::Approx(1.75).epsilon(1e-14));
  const auto s = ScalarField::sample(g, [](double x, double) { return std::sin(x); });
  CHECK(lp_norm(s, 2.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(lp_norm(s, kInf) >= 0.9988);
  CHECK(lp_norm(s, kInf) <= 1.0);
  // mean |sin| = 2/pi is exact for the trapezoid rule only up to aliasing; N=64 is close.
  CHECK(lp_norm(s, 1.0) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-3));
  CHECK_THROWS_AS(lp_norm(s, 0.5), std::invalid_argument);
  // Vector norms use the pointwise magnitude: |TG|^2 = sin^2 x cos^2 y + cos^2 x sin^2 y.
  CHECK(lp_norm(taylor_green(g), 2.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(lp_norm(taylor_green(g), kInf) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("advect") {
  const GridSpec g = grid_of(64);
  const auto f = ScalarField::sample(g, [](double x, double) { return std::sin(x); });
  CHECK(lp_norm(advect(VectorField::zero(g), f), kInf) == 0.0);
  CHECK(lp_norm(advect(taylor_green(g), ScalarField::constant(g, 4.0)), kInf) <= 1e-14);
  const VectorField unit = make_vector(ScalarField::constant(g, 1.0), ScalarField::zero(g));
  const auto cos_x = ScalarField::sample(g, [](double x, double) { return std::cos(x); });
  CHECK(max_abs_diff(advect(unit, f).values(), cos_x.values()) <= 1e-13);
}

TEST_CASE("dealias") {
  const GridSpec g = grid_of(64);
  const auto low = ekman::testing::random_band_limited(g, g.k_max(), 4);
  CHECK(max_abs_diff(dealias(low).values(), low.values()) <= 1e-14);
  const auto high = ScalarField::sample(g, [](double x, double y) { return std::cos(22 * x + y); });
  CHECK(dealias(high).values().abs().maxCoeff() <= 1e-13);
  const auto high_y = ScalarField::sample(g, [](double x, double y) { return std::sin(x) * std::cos(25 * y); });
  CHECK(dealias(high_y).values().abs().maxCoeff() <= 1e-13);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = ekman::testing::random_band_limited(g, 32, seed);
    const auto once = dealias(r);
    CHECK(max_abs_diff(dealias(once).values(), once.values()) == 0.0);
  }
}

TEST_CASE("products") {
  const GridSpec g = grid_of(64);
  const auto a = ScalarField::sample(g, [](double x, double) { return std::cos(15 * x); });
  // cos^2(15x) = (1 + cos 30x)/2; the 30 mode is above the cutoff of 21.
  CHECK(max_abs_diff(product(a, a).values(), ScalarField::constant(g, 0.5).values()) <= 1e-14);
  CHECK(max_abs_diff(multiply(a, a).values(), a.values().square()) <= 1e-14);
}

TEST_CASE("linear operations keep both representations consistent") {
  const GridSpec g = grid_of(32);
  const auto a = ekman::testing::random_dealiased(g, 1);
  const auto b = ekman::testing::random_dealiased(g, 2);
  const ScalarField c = 2.0 * a - b + 0.25;
  const ScalarField recomputed = ScalarField::from_values(g, c.values());
  CHECK((recomputed.spectrum() - c.spectrum()).abs().maxCoeff() <= 1e-14);
  CHECK(c.mean() == doctest::Approx((2.0 * a.values() - b.values()).mean() + 0.25).epsilon(1e-13));
  CHECK_THROWS_AS(a + ScalarField::zero(grid_of(16)), std::invalid_argument);
}

TEST_CASE("gradient_sup_norm of Taylor-Green") {
  // grad TG = [[cos x cos y, -sin x sin y], [sin x sin y, -cos x cos y]];
  // the Frobenius norm is sqrt(2) everywhere.
  const GridSpec g = grid_of(32);
  CHECK(gradient_sup_norm(taylor_green(g)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
}
