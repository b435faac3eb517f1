#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "stochwave/fft.hpp"
#include "stochwave/grid.hpp"

namespace stochwave {

// Parity of a Fourier-multiplier symbol m(xi). Even-real and odd-imaginary
// symbols map real fields to real fields; general symbols must satisfy
// m(-xi) = conj(m(xi)) themselves or the realness check will fire.
enum class SymbolParity { even_real, odd_imaginary, general };

struct Symbol {
  std::function<std::complex<double>(double)> eval;
  SymbolParity parity = SymbolParity::general;

  Symbol operator*(const Symbol& other) const;
};

// --- scalar symbol evaluations -------------------------------------------

// K(xi) = sqrt(tanh(h xi)/(h xi)), the removable singularity at xi = 0
// filled by its limit 1. Total on the reals, value in (0, 1].
double eval_symbol_k(double xi, double h);

// K_a(xi) = 1 + |a| xi^2. Requires a <= 0.
double eval_symbol_ka(double xi, double a);

// K_b(xi) = 1 + b xi^2. Requires b >= 0.
double eval_symbol_kb(double xi, double b);

// G0 symbol xi * tanh(h xi) >= 0.
double eval_symbol_g0(double xi, double h);

// --- symbol factories -----------------------------------------------------

Symbol identity_symbol();
Symbol derivative_symbol();              // i xi
Symbol k_symbol(double h);               // K
Symbol k_squared_symbol(double h);       // K^2
Symbol k_inverse_symbol(double h);       // K^-1
Symbol ka_symbol(double a);              // K_a
Symbol kb_symbol(double b);              // K_b
Symbol kb_inverse_symbol(double b);      // K_b^-1
Symbol g0_symbol(double h);              // xi tanh(h xi)
Symbol shift_symbol(double alpha);       // e^{i alpha xi}

// --- application ----------------------------------------------------------

// Symbol values tabulated on a grid's FFT-ordered modes. The Nyquist entry
// is projected onto its real part: no real-valued assignment exists for an
// odd-imaginary symbol there, and taking the real part keeps every real
// field real while touching only the highest mode.
class MultiplierTable {
 public:
  MultiplierTable() = default;
  MultiplierTable(const Symbol& sym, const Grid& grid);

  const std::vector<std::complex<double>>& values() const { return values_; }

  // In-place product with a spectrum of matching length.
  void apply(Spectrum& spec) const;

  RealField apply(const RealField& f) const;

 private:
  std::vector<std::complex<double>> values_;
};

// inverse-transform(sym(xi) * transform(f)). Throws InternalError when the
// result fails the realness check.
RealField apply_multiplier(const Symbol& sym, const RealField& f);

// Circular shift f(x) -> f(x + alpha) by phase multiplication e^{i alpha xi}.
// Exact for band-limited data; grid-aligned alpha reduces to index rotation.
RealField spatial_shift(const RealField& f, double alpha);

// Zero all modes with |k| > N/3 (2/3-rule dealiasing).
void dealias_two_thirds(Spectrum& spec);

}  // namespace stochwave
