#pragma once

#include <vector>

#include "ekman/field.hpp"

namespace ekman {

/// Besov regularity triple (s, p, r); p and r may be kInf.
struct BesovIndex {
  double s = 1.0;
  double p = kInf;
  double r = 1.0;

  /// True when B^s_{p,r} embeds in the globally Lipschitz functions in dimension dim.
  [[nodiscard]] bool lipschitz_embedding(int dim = 2) const;

  friend bool operator==(const BesovIndex&, const BesovIndex&) = default;
};

/// Radial cut-off: 1 on [0, 1.1], 0 on [1.9, inf), smooth and nonincreasing between.
double chi_profile(double radius);

/// Fourier multipliers realizing the dyadic blocks on a finite grid.
///
/// Block j >= 0 is phi_j(xi) = chi(2^-j xi) - chi(2^{-j+1} xi), supported in the
/// annulus 0.55 * 2^j <= |xi| <= 1.9 * 2^j. Block -1 is chi(2 xi), so that the
/// partial sums telescope: Delta_{-1} + ... + Delta_{J} = chi(2^-J xi). The top
/// block j_max absorbs every remaining mode; j_max is the smallest J with
/// 1.9 * 2^J >= k_max * sqrt(dim), which keeps that block inside its annulus on
/// the dealiased modes.
class DyadicFilterBank {
 public:
  explicit DyadicFilterBank(const GridSpec& grid);

  [[nodiscard]] const GridSpec& grid() const { return grid_; }
  [[nodiscard]] int j_max() const { return j_max_; }
  /// Multiplier of block j on the half spectrum, j in [-1, j_max].
  [[nodiscard]] const RealGrid& block_profile(int j) const;
  /// Multiplier of S_j = sum_{k <= j-1} Delta_k.
  [[nodiscard]] RealGrid cutoff_profile(int j) const;
  /// |xi| of every stored mode.
  [[nodiscard]] const RealGrid& radius() const { return radius_; }

  /// Copy with block j scaled by (1 + epsilon). Used for fault injection.
  [[nodiscard]] DyadicFilterBank with_perturbed_block(int j, double epsilon) const;

 private:
  GridSpec grid_;
  int j_max_ = 0;
  RealGrid radius_;
  std::vector<RealGrid> profiles_;  // index j + 1
};

/// Largest residual |sum_j profile_j - 1| over the dealiased modes.
double partition_of_unity_residual(const DyadicFilterBank& bank);

ScalarField dyadic_block(const DyadicFilterBank& bank, const ScalarField& f, int j);
VectorField dyadic_block(const DyadicFilterBank& bank, const VectorField& v, int j);
ScalarField low_cutoff(const DyadicFilterBank& bank, const ScalarField& f, int j);

/// l^r norm over j of 2^{js} ||Delta_j f||_{L^p}.
double besov_norm(const DyadicFilterBank& bank, const ScalarField& f, const BesovIndex& idx);
/// Vector version; block norms use the pointwise Euclidean magnitude.
double besov_norm(const DyadicFilterBank& bank, const VectorField& v, const BesovIndex& idx);

/// ||f||_{L^2} + ||f||_{B^s_{p,r}}.
double intersection_norm(const DyadicFilterBank& bank, const ScalarField& f, const BesovIndex& idx);
double intersection_norm(const DyadicFilterBank& bank, const VectorField& v, const BesovIndex& idx);

/// T_u v = sum_{j >= 1} S_{j-1}u Delta_j v, dealiased.
ScalarField paraproduct(const DyadicFilterBank& bank, const ScalarField& u, const ScalarField& v);
/// R(u, v) = sum_{|k - j| <= 1} Delta_j u Delta_k v, dealiased.
ScalarField remainder(const DyadicFilterBank& bank, const ScalarField& u, const ScalarField& v);

struct CommutatorEntry {
  int j = 0;
  double lhs = 0.0;       // 2^{js} ||[f, Delta_j] v||_{L^p}
  double envelope = 0.0;  // j-independent right-hand side
};

/// Per-block sizes of the commutator [f, Delta_j] v against the envelope
/// ||f||_{B^1_{inf,1}} ||v||_{B^{s-1}_{p,r}} + ||grad f||_{B^{s-1}_{p,r}} ||v||_{L^inf}.
std::vector<CommutatorEntry> commutator_damping_profile(const DyadicFilterBank& bank,
                                                        const ScalarField& f,
                                                        const VectorField& v,
                                                        const BesovIndex& idx);

}  // namespace ekman
