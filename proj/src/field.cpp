#include "ekman/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fft.hpp"

namespace ekman {

void GridSpec::validate() const {
  if (dim != 2) throw std::invalid_argument("grid.dim: only dim = 2 is supported");
  if (n < 8 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("grid.n: must be a power of two >= 8, got " + std::to_string(n));
  }
  if (!(length > 0.0)) throw std::invalid_argument("grid.length: must be positive");
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw std::invalid_argument("grid.dealias_fraction: must lie in (0, 1]");
  }
  if (k_max() < 2) throw std::invalid_argument("grid.dealias_fraction: cutoff k_max below 2");
}

namespace {

// Enforce conj symmetry on the self-paired ky = 0 and ky = n/2 columns.
void symmetrize(ComplexGrid& s, int n) {
  for (int col : {0, n / 2}) {
    for (int i = 0; i <= n / 2; ++i) {
      const int partner = (n - i) % n;
      const auto avg = 0.5 * (s(i, col) + std::conj(s(partner, col)));
      s(i, col) = avg;
      s(partner, col) = std::conj(avg);
    }
  }
}

template <class Symbol>
ScalarField apply_symbol(const ScalarField& f, Symbol&& symbol) {
  const int n = f.grid().n;
  ComplexGrid out = f.spectrum();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= n / 2; ++j) out(i, j) *= symbol(i, j);
  }
  return ScalarField::from_spectrum(f.grid(), std::move(out));
}

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

void require_planar(const VectorField& v, const char* op) {
  if (v.dim() != 2) throw std::invalid_argument(std::string(op) + ": requires a 2-D vector field");
}

}  // namespace

ScalarField ScalarField::from_values(const GridSpec& grid, RealGrid values) {
  if (values.rows() != grid.n || values.cols() != grid.n) {
    throw std::invalid_argument("ScalarField: sample array does not match grid size");
  }
  auto spectrum = detail::forward_fft(values);
  return {grid, std::move(values), std::move(spectrum)};
}

ScalarField ScalarField::from_spectrum(const GridSpec& grid, ComplexGrid spectrum) {
  if (spectrum.rows() != grid.n || spectrum.cols() != grid.half()) {
    throw std::invalid_argument("ScalarField: spectrum does not match grid size");
  }
  symmetrize(spectrum, grid.n);
  auto values = detail::inverse_fft(spectrum, grid.n);
  return {grid, std::move(values), std::move(spectrum)};
}

ScalarField ScalarField::constant(const GridSpec& grid, double c) {
  RealGrid values = RealGrid::Constant(grid.n, grid.n, c);
  ComplexGrid spectrum = ComplexGrid::Zero(grid.n, grid.half());
  spectrum(0, 0) = c;
  return {grid, std::move(values), std::move(spectrum)};
}

ScalarField ScalarField::sample(const GridSpec& grid,
                                const std::function<double(double, double)>& f) {
  RealGrid values(grid.n, grid.n);
  for (int i = 0; i < grid.n; ++i) {
    for (int j = 0; j < grid.n; ++j) values(i, j) = f(grid.coordinate(i), grid.coordinate(j));
  }
  return from_values(grid, std::move(values));
}

ScalarField ScalarField::operator-() const { return {grid_, -values_, -spectrum_}; }

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid_, b.grid_);
  return {a.grid_, a.values_ + b.values_, a.spectrum_ + b.spectrum_};
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid_, b.grid_);
  return {a.grid_, a.values_ - b.values_, a.spectrum_ - b.spectrum_};
}

ScalarField operator*(double s, const ScalarField& f) {
  return {f.grid_, s * f.values_, s * f.spectrum_};
}

ScalarField operator+(const ScalarField& f, double c) {
  ComplexGrid spectrum = f.spectrum_;
  spectrum(0, 0) += c;
  return {f.grid_, f.values_ + c, std::move(spectrum)};
}

VectorField VectorField::zero(const GridSpec& grid, int dim) {
  VectorField v;
  v.components.assign(dim, ScalarField::zero(grid));
  v.divergence_free = true;
  return v;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("vector fields differ in dimension");
  VectorField out;
  for (std::size_t i = 0; i < a.dim(); ++i) out.components.push_back(a[i] + b[i]);
  out.divergence_free = a.divergence_free && b.divergence_free;
  return out;
}

VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-1.0) * b; }

VectorField operator*(double s, const VectorField& v) {
  VectorField out;
  for (const auto& c : v.components) out.components.push_back(s * c);
  out.divergence_free = v.divergence_free;
  return out;
}

VectorField make_vector(ScalarField x, ScalarField y, bool divergence_free) {
  require_same_grid(x.grid(), y.grid());
  VectorField v;
  v.components.push_back(std::move(x));
  v.components.push_back(std::move(y));
  v.divergence_free = divergence_free;
  return v;
}

ScalarField partial(const ScalarField& f, int axis) {
  const int n = f.grid().n;
  const double scale = 2.0 * std::numbers::pi / f.grid().length;
  const std::complex<double> I(0.0, 1.0);
  if (axis == 0) {
    return apply_symbol(f, [&](int i, int) { return I * scale * derivative_wavenumber(i, n); });
  }
  if (axis == 1) {
    return apply_symbol(f, [&](int, int j) { return I * scale * derivative_wavenumber(j, n); });
  }
  throw std::invalid_argument("partial: axis must be 0 or 1");
}

VectorField gradient(const ScalarField& f) { return make_vector(partial(f, 0), partial(f, 1)); }

ScalarField divergence(const VectorField& v) {
  ScalarField out = partial(v[0], 0);
  for (std::size_t i = 1; i < v.dim(); ++i) out = out + partial(v[i], static_cast<int>(i));
  return out;
}

ScalarField curl2d(const VectorField& v) {
  require_planar(v, "curl2d");
  return partial(v[1], 0) - partial(v[0], 1);
}

VectorField perp_gradient(const ScalarField& f) {
  return make_vector(-partial(f, 1), partial(f, 0), true);
}

namespace {

double laplace_symbol(int i, int j, const GridSpec& g) {
  const double scale = 2.0 * std::numbers::pi / g.length;
  const double kx = derivative_wavenumber(i, g.n) * scale;
  const double ky = derivative_wavenumber(j, g.n) * scale;
  return -(kx * kx + ky * ky);
}

}  // namespace

ScalarField laplacian(const ScalarField& f) {
  return apply_symbol(f, [&](int i, int j) { return laplace_symbol(i, j, f.grid()); });
}

ScalarField inverse_laplacian(const ScalarField& f) {
  return apply_symbol(f, [&](int i, int j) {
    const double s = laplace_symbol(i, j, f.grid());
    return s == 0.0 ? 0.0 : 1.0 / s;
  });
}

VectorField leray_project(const VectorField& v) {
  require_planar(v, "leray_project");
  const GridSpec& g = v.grid();
  const int n = g.n;
  const double scale = 2.0 * std::numbers::pi / g.length;
  ComplexGrid px = v[0].spectrum();
  ComplexGrid py = v[1].spectrum();
  for (int i = 0; i < n; ++i) {
    const double kx = derivative_wavenumber(i, n) * scale;
    for (int j = 0; j <= n / 2; ++j) {
      const double ky = derivative_wavenumber(j, n) * scale;
      const double k2 = kx * kx + ky * ky;
      if (k2 == 0.0) continue;
      const auto kdotv = kx * px(i, j) + ky * py(i, j);
      px(i, j) -= kx * kdotv / k2;
      py(i, j) -= ky * kdotv / k2;
    }
  }
  return make_vector(ScalarField::from_spectrum(g, std::move(px)),
                     ScalarField::from_spectrum(g, std::move(py)), true);
}

ScalarField dealias(const ScalarField& f) {
  const int n = f.grid().n;
  const int k_max = f.grid().k_max();
  return apply_symbol(f, [&](int i, int j) {
    return (std::abs(wavenumber(i, n)) > k_max || std::abs(wavenumber(j, n)) > k_max) ? 0.0 : 1.0;
  });
}

VectorField dealias(const VectorField& v) {
  VectorField out;
  for (const auto& c : v.components) out.components.push_back(dealias(c));
  out.divergence_free = v.divergence_free;
  return out;
}

ScalarField multiply(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid());
  return ScalarField::from_values(a.grid(), a.values() * b.values());
}

ScalarField product(const ScalarField& a, const ScalarField& b) { return dealias(multiply(a, b)); }

VectorField product(const ScalarField& a, const VectorField& v) {
  VectorField out;
  for (const auto& c : v.components) out.components.push_back(product(a, c));
  return out;
}

ScalarField map(const ScalarField& f, const std::function<double(double)>& fn) {
  return ScalarField::from_values(f.grid(), f.values().unaryExpr(fn));
}

ScalarField advect(const VectorField& u, const ScalarField& f) {
  RealGrid sum = RealGrid::Zero(f.grid().n, f.grid().n);
  for (std::size_t i = 0; i < u.dim(); ++i) {
    sum += u[i].values() * partial(f, static_cast<int>(i)).values();
  }
  return dealias(ScalarField::from_values(f.grid(), std::move(sum)));
}

VectorField advect(const VectorField& u, const VectorField& v) {
  VectorField out;
  for (const auto& c : v.components) out.components.push_back(advect(u, c));
  return out;
}

namespace {

double lp_of_samples(const RealGrid& abs_values, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: exponent must be >= 1");
  if (std::isinf(p)) return abs_values.maxCoeff();
  if (p == 1.0) return abs_values.mean();
  if (p == 2.0) return std::sqrt(abs_values.square().mean());
  return std::pow(abs_values.pow(p).mean(), 1.0 / p);
}

}  // namespace

double lp_norm(const ScalarField& f, double p) { return lp_of_samples(f.values().abs(), p); }

namespace {

RealGrid magnitude_samples(const VectorField& v) {
  RealGrid sq = RealGrid::Zero(v.grid().n, v.grid().n);
  for (const auto& c : v.components) sq += c.values().square();
  return sq.sqrt();
}

}  // namespace

double lp_norm(const VectorField& v, double p) { return lp_of_samples(magnitude_samples(v), p); }

ScalarField magnitude(const VectorField& v) {
  return ScalarField::from_values(v.grid(), magnitude_samples(v));
}

double gradient_sup_norm(const VectorField& v) {
  RealGrid sq = RealGrid::Zero(v.grid().n, v.grid().n);
  for (const auto& c : v.components) {
    for (int axis = 0; axis < static_cast<int>(v.dim()); ++axis) {
      sq += partial(c, axis).values().square();
    }
  }
  return std::sqrt(sq.maxCoeff());
}

}  // namespace ekman
