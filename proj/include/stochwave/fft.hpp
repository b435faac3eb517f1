#pragma once

#include <complex>
#include <vector>

#include "stochwave/grid.hpp"

namespace stochwave {

using Spectrum = std::vector<std::complex<double>>;

// Forward DFT of a real field; returns all N complex coefficients in FFT
// order. Unnormalized (FFTW convention).
Spectrum fft_forward(const RealField& f);

// Inverse DFT (scaled by 1/N) back to a real field. Throws InternalError if
// the imaginary residual exceeds 1e-10 times the field norm: a Hermitian
// spectrum is the caller's contract.
RealField fft_inverse(const Grid& grid, const Spectrum& spec);

// As above but discards the imaginary part without checking (for callers
// that have already enforced Hermitian symmetry structurally).
RealField fft_inverse_unchecked(const Grid& grid, const Spectrum& spec);

}  // namespace stochwave
