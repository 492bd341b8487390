#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ekman/field.hpp"

namespace ekman {

/// Initial velocity recipes. All are mean-zero and divergence-free.
struct VelocityPreset {
  enum class Kind { zero, taylor_green, random_shell, shear, swirl };
  Kind kind = Kind::taylor_green;
  double amplitude = 1.0;
  int shell = 2;               // random_shell: dyadic block index
  std::uint64_t seed = 12345;  // random_shell
};

/// Initial density recipes, optionally clamped to [lower, upper].
struct DensityPreset {
  enum class Kind { constant, single_mode, gaussian_bump };
  Kind kind = Kind::constant;
  double value = 1.0;      // constant level, and the background of the others
  double amplitude = 0.0;  // single_mode / gaussian_bump
  int kx = 1;              // single_mode: value + amplitude * cos(kx x + ky y)
  int ky = 0;
  double width = 0.5;      // gaussian_bump
  std::optional<double> lower;
  std::optional<double> upper;
};

std::optional<VelocityPreset::Kind> parse_velocity_kind(const std::string& name);
std::optional<DensityPreset::Kind> parse_density_kind(const std::string& name);
std::string to_string(VelocityPreset::Kind kind);
std::string to_string(DensityPreset::Kind kind);

/// amplitude * (sin x cos y, -cos x sin y).
VectorField taylor_green(const GridSpec& grid, double amplitude = 1.0);
/// amplitude * (-sin y, sin x): rigid rotation about the origin to leading order.
VectorField swirl(const GridSpec& grid, double amplitude = 1.0);
/// amplitude * (cos y, 0).
VectorField shear(const GridSpec& grid, double amplitude = 1.0);
/// Random stream function with modes in 0.75 * 2^j <= |k| <= 1.5 * 2^j, dealiased
/// and Leray-projected, scaled to sup norm `amplitude`.
VectorField random_shell(const GridSpec& grid, int shell, double amplitude, std::uint64_t seed);

VectorField make_velocity(const GridSpec& grid, const VelocityPreset& preset);
ScalarField make_density(const GridSpec& grid, const DensityPreset& preset);

}  // namespace ekman
