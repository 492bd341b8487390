#pragma once

// Test-only generators and independent oracles. Nothing here calls the
// spectral operators it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "ekman/field.hpp"

namespace ekman::testing {

inline GridSpec grid_of(int n) {
  GridSpec g;
  g.n = n;
  return g;
}

/// Real field with random Fourier coefficients on |kx|, |ky| <= k_limit. The
/// coefficients depend only on (seed, k_limit), not on the resolution.
inline ScalarField random_band_limited(const GridSpec& grid, int k_limit, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int n = grid.n;
  k_limit = std::min(k_limit, n / 2);
  ComplexGrid s = ComplexGrid::Zero(n, grid.half());
  for (int kx = -k_limit; kx <= k_limit; ++kx) {
    for (int ky = 0; ky <= k_limit; ++ky) {
      const double re = unit(rng);
      const double im = unit(rng);
      s((kx + n) % n, ky) = {re, im};
    }
  }
  // Imaginary parts on the self-conjugate modes are discarded by the field.
  return ScalarField::from_spectrum(grid, s);
}

inline ScalarField random_dealiased(const GridSpec& grid, std::uint64_t seed) {
  return random_band_limited(grid, grid.k_max(), seed);
}

inline VectorField random_vector(const GridSpec& grid, int k_limit, std::uint64_t seed) {
  return make_vector(random_band_limited(grid, k_limit, seed), random_band_limited(grid, k_limit, seed + 7919));
}

/// Centered finite-difference derivative along `axis` on the periodic grid.
/// order is 4 or 6.
inline RealGrid fd_derivative(const RealGrid& f, int axis, double h, int order = 6) {
  const int n = static_cast<int>(f.rows());
  RealGrid out(n, n);
  auto at = [&](int i, int j) { return f((i + n) % n, (j + n) % n); };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto shifted = [&](int s) { return axis == 0 ? at(i + s, j) : at(i, j + s); };
      if (order == 4) {
        out(i, j) = (-shifted(2) + 8.0 * shifted(1) - 8.0 * shifted(-1) + shifted(-2)) / (12.0 * h);
      } else {
        out(i, j) = (shifted(3) - 9.0 * shifted(2) + 45.0 * shifted(1) - 45.0 * shifted(-1) +
                     9.0 * shifted(-2) - shifted(-3)) /
                    (60.0 * h);
      }
    }
  }
  return out;
}

/// Dense periodic Fourier differentiation matrix for even n (Nyquist derivative zero).
inline Eigen::MatrixXd fourier_diff_matrix(int n) {
  const double h = 2.0 * std::numbers::pi / n;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const int d = i - j;
      const double sign = (d % 2 == 0) ? 1.0 : -1.0;
      D(i, j) = 0.5 * sign / std::tan(d * h / 2.0);
    }
  }
  return D;
}

/// Flattened (ix * n + iy) samples.
inline Eigen::VectorXd flatten(const RealGrid& g) {
  return Eigen::Map<const Eigen::VectorXd>(g.data(), g.size());
}

struct DenseEllipticSolution {
  Eigen::VectorXd pressure;
  Eigen::VectorXd grad_x;
  Eigen::VectorXd grad_y;
};

/// Minimum-norm solution of -Dx a Dx p - Dy a Dy p = Dx F1 + Dy F2 with dense
/// collocation matrices.
inline DenseEllipticSolution dense_elliptic_solve(const RealGrid& rho, const RealGrid& F1,
                                                  const RealGrid& F2) {
  const int n = static_cast<int>(rho.rows());
  const Eigen::MatrixXd D = fourier_diff_matrix(n);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd Dx(n * n, n * n), Dy(n * n, n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Dx.block(a * n, b * n, n, n) = D(a, b) * I;
      Dy.block(a * n, b * n, n, n) = I(a, b) * D;
    }
  }
  const Eigen::VectorXd a = flatten(rho).cwiseInverse();
  const Eigen::MatrixXd A = -(Dx * a.asDiagonal() * Dx + Dy * a.asDiagonal() * Dy);
  const Eigen::VectorXd rhs = Dx * flatten(F1) + Dy * flatten(F2);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
  cod.setThreshold(1e-10);
  DenseEllipticSolution sol;
  sol.pressure = cod.solve(rhs);
  sol.grad_x = Dx * sol.pressure;
  sol.grad_y = Dy * sol.pressure;
  return sol;
}

inline double max_abs_diff(const RealGrid& a, const RealGrid& b) { return (a - b).abs().maxCoeff(); }

}  // namespace ekman::testing
