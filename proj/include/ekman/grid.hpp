#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Core>

namespace ekman {

/// Real samples on the n x n periodic grid; (ix, iy) with ix the slow index.
using RealGrid = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
/// Half-plane Fourier coefficients, n x (n/2 + 1); the second axis holds ky >= 0.
using ComplexGrid =
    Eigen::Array<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Uniform periodic grid on the 2-torus [0, 2pi)^2.
struct GridSpec {
  int n = 64;
  int dim = 2;
  double length = 2.0 * std::numbers::pi;
  double dealias_fraction = 2.0 / 3.0;

  /// Largest retained wavenumber component after dealiasing.
  [[nodiscard]] int k_max() const {
    return static_cast<int>(std::floor(dealias_fraction * n / 2.0 + 1e-12));
  }
  [[nodiscard]] int half() const { return n / 2 + 1; }
  [[nodiscard]] double spacing() const { return length / n; }
  [[nodiscard]] double coordinate(int i) const { return spacing() * i; }

  /// Throws std::invalid_argument when the grid cannot host the solver.
  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Signed wavenumber of FFT index i on an n-point axis; the Nyquist index maps to +n/2.
inline int wavenumber(int i, int n) { return i <= n / 2 ? i : i - n; }

/// Wavenumber used by odd-order derivatives: Nyquist is zeroed so that
/// derivatives of real fields stay real.
inline double derivative_wavenumber(int i, int n) {
  if (2 * i == n) return 0.0;
  return static_cast<double>(wavenumber(i, n));
}

}  // namespace ekman
