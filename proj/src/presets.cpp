#include "ekman/presets.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ekman {

std::optional<VelocityPreset::Kind> parse_velocity_kind(const std::string& name) {
  using K = VelocityPreset::Kind;
  if (name == "zero") return K::zero;
  if (name == "taylor_green") return K::taylor_green;
  if (name == "random_shell") return K::random_shell;
  if (name == "shear") return K::shear;
  if (name == "swirl") return K::swirl;
  return std::nullopt;
}

std::optional<DensityPreset::Kind> parse_density_kind(const std::string& name) {
  using K = DensityPreset::Kind;
  if (name == "constant") return K::constant;
  if (name == "single_mode") return K::single_mode;
  if (name == "gaussian_bump") return K::gaussian_bump;
  return std::nullopt;
}

std::string to_string(VelocityPreset::Kind kind) {
  switch (kind) {
    case VelocityPreset::Kind::zero: return "zero";
    case VelocityPreset::Kind::taylor_green: return "taylor_green";
    case VelocityPreset::Kind::random_shell: return "random_shell";
    case VelocityPreset::Kind::shear: return "shear";
    case VelocityPreset::Kind::swirl: return "swirl";
  }
  return "unknown";
}

std::string to_string(DensityPreset::Kind kind) {
  switch (kind) {
    case DensityPreset::Kind::constant: return "constant";
    case DensityPreset::Kind::single_mode: return "single_mode";
    case DensityPreset::Kind::gaussian_bump: return "gaussian_bump";
  }
  return "unknown";
}

VectorField taylor_green(const GridSpec& grid, double amplitude) {
  return make_vector(
      ScalarField::sample(grid, [=](double x, double y) { return amplitude * std::sin(x) * std::cos(y); }),
      ScalarField::sample(grid, [=](double x, double y) { return -amplitude * std::cos(x) * std::sin(y); }),
      true);
}

VectorField swirl(const GridSpec& grid, double amplitude) {
  return make_vector(ScalarField::sample(grid, [=](double, double y) { return -amplitude * std::sin(y); }),
                     ScalarField::sample(grid, [=](double x, double) { return amplitude * std::sin(x); }),
                     true);
}

VectorField shear(const GridSpec& grid, double amplitude) {
  return make_vector(ScalarField::sample(grid, [=](double, double y) { return amplitude * std::cos(y); }),
                     ScalarField::zero(grid), true);
}

VectorField random_shell(const GridSpec& grid, int shell, double amplitude, std::uint64_t seed) {
  if (shell < 0) throw std::invalid_argument("ic.u_params.shell: must be >= 0");
  const int n = grid.n;
  const double lo = 0.75 * std::ldexp(1.0, shell);
  const double hi = 1.5 * std::ldexp(1.0, shell);
  if (lo > grid.k_max()) throw std::invalid_argument("ic.u_params.shell: shell beyond the dealiasing cutoff");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  ComplexGrid psi = ComplexGrid::Zero(n, grid.half());
  // Draws in a fixed wavenumber order, so the field does not depend on n.
  const int kb = static_cast<int>(std::floor(hi));
  for (int kx = -kb; kx <= kb; ++kx) {
    for (int ky = 0; ky <= kb; ++ky) {
      const double re = unit(rng);
      const double im = unit(rng);
      const double k = std::hypot(kx, ky);
      if (k >= lo && k <= hi && std::abs(kx) < n / 2 && ky < n / 2) psi((kx + n) % n, ky) = {re / k, im / k};
    }
  }
  const VectorField u = leray_project(dealias(perp_gradient(ScalarField::from_spectrum(grid, psi))));
  const double sup = lp_norm(u, kInf);
  if (sup == 0.0) throw std::invalid_argument("ic.u_params.shell: shell contains no grid modes");
  return (amplitude / sup) * u;
}

VectorField make_velocity(const GridSpec& grid, const VelocityPreset& preset) {
  switch (preset.kind) {
    case VelocityPreset::Kind::zero: return VectorField::zero(grid);
    case VelocityPreset::Kind::taylor_green: return taylor_green(grid, preset.amplitude);
    case VelocityPreset::Kind::random_shell:
      return random_shell(grid, preset.shell, preset.amplitude, preset.seed);
    case VelocityPreset::Kind::shear: return shear(grid, preset.amplitude);
    case VelocityPreset::Kind::swirl: return swirl(grid, preset.amplitude);
  }
  throw std::invalid_argument("unknown velocity preset");
}

ScalarField make_density(const GridSpec& grid, const DensityPreset& preset) {
  ScalarField rho;
  switch (preset.kind) {
    case DensityPreset::Kind::constant:
      rho = ScalarField::constant(grid, preset.value);
      break;
    case DensityPreset::Kind::single_mode:
      rho = ScalarField::sample(grid, [&](double x, double y) {
        return preset.value + preset.amplitude * std::cos(preset.kx * x + preset.ky * y);
      });
      break;
    case DensityPreset::Kind::gaussian_bump: {
      // Periodized bump centred at (pi, pi), built from the smooth 2pi-periodic distance.
      const double w2 = preset.width * preset.width;
      rho = ScalarField::sample(grid, [&](double x, double y) {
        const double d2 = 2.0 * (1.0 - std::cos(x - std::numbers::pi)) +
                          2.0 * (1.0 - std::cos(y - std::numbers::pi));
        return preset.value + preset.amplitude * std::exp(-d2 / (2.0 * w2));
      });
      break;
    }
  }
  if (preset.lower || preset.upper) {
    const double lo = preset.lower.value_or(-kInf);
    const double hi = preset.upper.value_or(kInf);
    rho = map(rho, [=](double r) { return std::clamp(r, lo, hi); });
  }
  if (!(rho.min() > 0.0)) throw std::invalid_argument("ic.rho_params: initial density must be positive");
  return rho;
}

}  // namespace ekman
