#pragma once

#include "ekman/grid.hpp"

namespace ekman::detail {

/// Normalized forward transform: coefficients are averages, so the (0,0)
/// entry is the grid mean.
ComplexGrid forward_fft(const RealGrid& values);
/// Inverse of forward_fft. The input is treated as Hermitian.
RealGrid inverse_fft(const ComplexGrid& spectrum, int n);

}  // namespace ekman::detail
