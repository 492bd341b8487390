#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "ekman/grid.hpp"

namespace ekman {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Periodic real scalar field holding both its grid samples and its Fourier
/// coefficients. Immutable after construction; the two representations are
/// always consistent. Coefficients are normalized so that spectrum(0,0) is
/// the mean.
class ScalarField {
 public:
  ScalarField() = default;

  static ScalarField from_values(const GridSpec& grid, RealGrid values);
  static ScalarField from_spectrum(const GridSpec& grid, ComplexGrid spectrum);
  static ScalarField constant(const GridSpec& grid, double c);
  static ScalarField zero(const GridSpec& grid) { return constant(grid, 0.0); }
  /// Samples f(x, y) at the grid nodes.
  static ScalarField sample(const GridSpec& grid, const std::function<double(double, double)>& f);

  [[nodiscard]] const GridSpec& grid() const { return grid_; }
  [[nodiscard]] const RealGrid& values() const { return values_; }
  [[nodiscard]] const ComplexGrid& spectrum() const { return spectrum_; }
  [[nodiscard]] double mean() const { return spectrum_(0, 0).real(); }
  [[nodiscard]] double min() const { return values_.minCoeff(); }
  [[nodiscard]] double max() const { return values_.maxCoeff(); }

  ScalarField operator-() const;
  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(double s, const ScalarField& f);
  friend ScalarField operator*(const ScalarField& f, double s) { return s * f; }
  friend ScalarField operator+(const ScalarField& f, double c);

 private:
  ScalarField(GridSpec grid, RealGrid values, ComplexGrid spectrum)
      : grid_(grid), values_(std::move(values)), spectrum_(std::move(spectrum)) {}

  GridSpec grid_{};
  RealGrid values_;
  ComplexGrid spectrum_;
};

/// A vector of scalar components on a common grid.
struct VectorField {
  std::vector<ScalarField> components;
  /// Set by operations whose output is divergence-free by construction.
  bool divergence_free = false;

  [[nodiscard]] std::size_t dim() const { return components.size(); }
  [[nodiscard]] const GridSpec& grid() const { return components.front().grid(); }
  const ScalarField& operator[](std::size_t i) const { return components[i]; }

  static VectorField zero(const GridSpec& grid, int dim = 2);

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(double s, const VectorField& v);
  friend VectorField operator*(const VectorField& v, double s) { return s * v; }
};

VectorField make_vector(ScalarField x, ScalarField y, bool divergence_free = false);

// Spectral calculus. Odd derivatives use the Nyquist-free wavenumber.
ScalarField partial(const ScalarField& f, int axis);
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
ScalarField curl2d(const VectorField& v);
VectorField perp_gradient(const ScalarField& f);
ScalarField laplacian(const ScalarField& f);
/// Mean-zero solution of lap(phi) = f, modes with vanishing symbol dropped.
ScalarField inverse_laplacian(const ScalarField& f);
/// v - grad(lap^{-1} div v).
VectorField leray_project(const VectorField& v);

/// Zeroes every mode with a wavenumber component above k_max.
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& v);

/// Pointwise product without dealiasing.
ScalarField multiply(const ScalarField& a, const ScalarField& b);
/// Pointwise product followed by 2/3-rule dealiasing.
ScalarField product(const ScalarField& a, const ScalarField& b);
VectorField product(const ScalarField& a, const VectorField& v);
/// Pointwise map of the grid samples.
ScalarField map(const ScalarField& f, const std::function<double(double)>& fn);

/// sum_i u^i d_i f, dealiased.
ScalarField advect(const VectorField& u, const ScalarField& f);
/// (u . grad) v applied componentwise, dealiased.
VectorField advect(const VectorField& u, const VectorField& v);

/// Normalized-measure L^p norm: (mean |f|^p)^(1/p), grid max for p = inf.
double lp_norm(const ScalarField& f, double p);
/// L^p norm of the pointwise Euclidean magnitude.
double lp_norm(const VectorField& v, double p);
/// max over nodes of the Frobenius norm of the Jacobian of v.
double gradient_sup_norm(const VectorField& v);

/// Pointwise Euclidean magnitude.
ScalarField magnitude(const VectorField& v);

}  // namespace ekman
