#include "ekman/littlewood_paley.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ekman {

bool BesovIndex::lipschitz_embedding(int dim) const {
  const double critical = 1.0 + dim / p;
  return s > critical || (s == critical && r == 1.0);
}

namespace {

double smooth_step_part(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// 0 at t <= 0, 1 at t >= 1, C-infinity in between.
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = smooth_step_part(t);
  return a / (a + smooth_step_part(1.0 - t));
}

constexpr double kInner = 1.1;
constexpr double kOuter = 1.9;

RealGrid chi_on(const RealGrid& radius, double scale) {
  return radius.unaryExpr([scale](double r) { return chi_profile(scale * r); });
}

double lr_sum(const std::vector<double>& terms, double r) {
  double acc = 0.0;
  if (std::isinf(r)) {
    for (double t : terms) acc = std::max(acc, t);
    return acc;
  }
  for (double t : terms) acc += std::pow(t, r);
  return std::pow(acc, 1.0 / r);
}

ScalarField apply_profile(const ScalarField& f, const RealGrid& profile) {
  ComplexGrid s = f.spectrum() * profile.cast<std::complex<double>>();
  return ScalarField::from_spectrum(f.grid(), std::move(s));
}

}  // namespace

double chi_profile(double radius) {
  return 1.0 - smooth_step((radius - kInner) / (kOuter - kInner));
}

DyadicFilterBank::DyadicFilterBank(const GridSpec& grid) : grid_(grid) {
  grid.validate();
  const double corner = grid.k_max() * std::sqrt(static_cast<double>(grid.dim));
  j_max_ = 0;
  while (kOuter * std::ldexp(1.0, j_max_) < corner) ++j_max_;
  if (j_max_ < 1) throw std::invalid_argument("grid too small to host a dyadic block j >= 1");

  const int n = grid.n;
  const double scale = 2.0 * std::numbers::pi / grid.length;
  radius_.resize(n, grid.half());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= n / 2; ++j) {
      radius_(i, j) = scale * std::hypot(wavenumber(i, n), wavenumber(j, n));
    }
  }

  profiles_.reserve(j_max_ + 2);
  profiles_.push_back(chi_on(radius_, 2.0));
  for (int j = 0; j < j_max_; ++j) {
    profiles_.push_back(chi_on(radius_, std::ldexp(1.0, -j)) -
                        chi_on(radius_, std::ldexp(1.0, -j + 1)));
  }
  profiles_.push_back(1.0 - chi_on(radius_, std::ldexp(1.0, -j_max_ + 1)));
}

const RealGrid& DyadicFilterBank::block_profile(int j) const {
  if (j < -1 || j > j_max_) {
    throw std::out_of_range("dyadic block index " + std::to_string(j) + " outside [-1, " +
                            std::to_string(j_max_) + "]");
  }
  return profiles_[j + 1];
}

RealGrid DyadicFilterBank::cutoff_profile(int j) const {
  if (j < 0) throw std::invalid_argument("low_cutoff: index must be >= 0");
  RealGrid acc = RealGrid::Zero(radius_.rows(), radius_.cols());
  for (int k = -1; k <= std::min(j - 1, j_max_); ++k) acc += profiles_[k + 1];
  return acc;
}

DyadicFilterBank DyadicFilterBank::with_perturbed_block(int j, double epsilon) const {
  DyadicFilterBank copy = *this;
  copy.profiles_.at(j + 1) *= (1.0 + epsilon);
  return copy;
}

double partition_of_unity_residual(const DyadicFilterBank& bank) {
  const auto& g = bank.grid();
  RealGrid sum = RealGrid::Zero(bank.radius().rows(), bank.radius().cols());
  for (int j = -1; j <= bank.j_max(); ++j) sum += bank.block_profile(j);
  double worst = 0.0;
  for (int i = 0; i < g.n; ++i) {
    if (std::abs(wavenumber(i, g.n)) > g.k_max()) continue;
    for (int j = 0; j <= g.k_max(); ++j) worst = std::max(worst, std::abs(sum(i, j) - 1.0));
  }
  return worst;
}

ScalarField dyadic_block(const DyadicFilterBank& bank, const ScalarField& f, int j) {
  return apply_profile(f, bank.block_profile(j));
}

VectorField dyadic_block(const DyadicFilterBank& bank, const VectorField& v, int j) {
  VectorField out;
  for (const auto& c : v.components) out.components.push_back(dyadic_block(bank, c, j));
  out.divergence_free = v.divergence_free;
  return out;
}

ScalarField low_cutoff(const DyadicFilterBank& bank, const ScalarField& f, int j) {
  return apply_profile(f, bank.cutoff_profile(j));
}

double besov_norm(const DyadicFilterBank& bank, const ScalarField& f, const BesovIndex& idx) {
  std::vector<double> terms;
  for (int j = -1; j <= bank.j_max(); ++j) {
    terms.push_back(std::pow(2.0, j * idx.s) * lp_norm(dyadic_block(bank, f, j), idx.p));
  }
  return lr_sum(terms, idx.r);
}

double besov_norm(const DyadicFilterBank& bank, const VectorField& v, const BesovIndex& idx) {
  std::vector<double> terms;
  for (int j = -1; j <= bank.j_max(); ++j) {
    terms.push_back(std::pow(2.0, j * idx.s) * lp_norm(dyadic_block(bank, v, j), idx.p));
  }
  return lr_sum(terms, idx.r);
}

double intersection_norm(const DyadicFilterBank& bank, const ScalarField& f, const BesovIndex& idx) {
  return lp_norm(f, 2.0) + besov_norm(bank, f, idx);
}

double intersection_norm(const DyadicFilterBank& bank, const VectorField& v, const BesovIndex& idx) {
  return lp_norm(v, 2.0) + besov_norm(bank, v, idx);
}

namespace {

std::vector<RealGrid> block_samples(const DyadicFilterBank& bank, const ScalarField& f) {
  std::vector<RealGrid> out;
  for (int j = -1; j <= bank.j_max(); ++j) out.push_back(dyadic_block(bank, f, j).values());
  return out;
}

}  // namespace

ScalarField paraproduct(const DyadicFilterBank& bank, const ScalarField& u, const ScalarField& v) {
  const auto ub = block_samples(bank, u);
  const auto vb = block_samples(bank, v);
  const int n = u.grid().n;
  RealGrid low = RealGrid::Zero(n, n);  // running S_{j-1} u
  RealGrid acc = RealGrid::Zero(n, n);
  for (int j = 1; j <= bank.j_max(); ++j) {
    low += ub[j - 1];  // adds Delta_{j-2} u
    acc += low * vb[j + 1];
  }
  return dealias(ScalarField::from_values(u.grid(), std::move(acc)));
}

ScalarField remainder(const DyadicFilterBank& bank, const ScalarField& u, const ScalarField& v) {
  const auto ub = block_samples(bank, u);
  const auto vb = block_samples(bank, v);
  const int n = u.grid().n;
  const int blocks = static_cast<int>(ub.size());
  RealGrid acc = RealGrid::Zero(n, n);
  for (int a = 0; a < blocks; ++a) {
    for (int b = std::max(0, a - 1); b <= std::min(blocks - 1, a + 1); ++b) acc += ub[a] * vb[b];
  }
  return dealias(ScalarField::from_values(u.grid(), std::move(acc)));
}

std::vector<CommutatorEntry> commutator_damping_profile(const DyadicFilterBank& bank,
                                                        const ScalarField& f,
                                                        const VectorField& v,
                                                        const BesovIndex& idx) {
  const BesovIndex lower{idx.s - 1.0, idx.p, idx.r};
  const double envelope =
      besov_norm(bank, f, BesovIndex{1.0, kInf, 1.0}) * besov_norm(bank, v, lower) +
      besov_norm(bank, gradient(f), lower) * lp_norm(v, kInf);
  const VectorField fv = product(f, v);
  std::vector<CommutatorEntry> out;
  for (int j = -1; j <= bank.j_max(); ++j) {
    const VectorField comm = product(f, dyadic_block(bank, v, j)) - dyadic_block(bank, fv, j);
    out.push_back({j, std::pow(2.0, j * idx.s) * lp_norm(comm, idx.p), envelope});
  }
  return out;
}

}  // namespace ekman
