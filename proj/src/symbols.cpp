#include "stochwave/symbols.hpp"

#include <cmath>

#include "stochwave/errors.hpp"

namespace stochwave {

Symbol Symbol::operator*(const Symbol& other) const {
  SymbolParity p;
  if (parity == SymbolParity::general || other.parity == SymbolParity::general)
    p = SymbolParity::general;
  else if (parity == other.parity)
    p = SymbolParity::even_real;   // even*even and odd*odd are both even-real
  else
    p = SymbolParity::odd_imaginary;
  auto a = eval, b = other.eval;
  return Symbol{[a, b](double xi) { return a(xi) * b(xi); }, p};
}

double eval_symbol_k(double xi, double h) {
  if (h <= 0.0) throw ConfigError("depth h must be positive");
  const double t = h * xi;
  if (t == 0.0) return 1.0;
  // tanh(t)/t is even; use the series below ~1e-5 where tanh loses digits.
  const double at = std::fabs(t);
  double ratio;
  if (at < 1e-5)
    ratio = 1.0 - t * t / 3.0;
  else
    ratio = std::tanh(at) / at;
  return std::sqrt(ratio);
}

double eval_symbol_ka(double xi, double a) {
  if (a > 0.0) throw ConfigError("K_a parameter must satisfy a <= 0");
  return 1.0 + std::fabs(a) * xi * xi;
}

double eval_symbol_kb(double xi, double b) {
  if (b < 0.0) throw ConfigError("K_b parameter must satisfy b >= 0");
  return 1.0 + b * xi * xi;
}

double eval_symbol_g0(double xi, double h) {
  if (h <= 0.0) throw ConfigError("depth h must be positive");
  return xi * std::tanh(h * xi);
}

Symbol identity_symbol() {
  return {[](double) { return std::complex<double>{1.0, 0.0}; },
          SymbolParity::even_real};
}

Symbol derivative_symbol() {
  return {[](double xi) { return std::complex<double>{0.0, xi}; },
          SymbolParity::odd_imaginary};
}

Symbol k_symbol(double h) {
  eval_symbol_k(0.0, h);  // validate h
  return {[h](double xi) { return std::complex<double>{eval_symbol_k(xi, h), 0.0}; },
          SymbolParity::even_real};
}

Symbol k_squared_symbol(double h) {
  eval_symbol_k(0.0, h);
  return {[h](double xi) {
            const double k = eval_symbol_k(xi, h);
            return std::complex<double>{k * k, 0.0};
          },
          SymbolParity::even_real};
}

Symbol k_inverse_symbol(double h) {
  eval_symbol_k(0.0, h);
  return {[h](double xi) { return std::complex<double>{1.0 / eval_symbol_k(xi, h), 0.0}; },
          SymbolParity::even_real};
}

Symbol ka_symbol(double a) {
  eval_symbol_ka(0.0, a);
  return {[a](double xi) { return std::complex<double>{eval_symbol_ka(xi, a), 0.0}; },
          SymbolParity::even_real};
}

Symbol kb_symbol(double b) {
  eval_symbol_kb(0.0, b);
  return {[b](double xi) { return std::complex<double>{eval_symbol_kb(xi, b), 0.0}; },
          SymbolParity::even_real};
}

Symbol kb_inverse_symbol(double b) {
  eval_symbol_kb(0.0, b);
  return {[b](double xi) { return std::complex<double>{1.0 / eval_symbol_kb(xi, b), 0.0}; },
          SymbolParity::even_real};
}

Symbol g0_symbol(double h) {
  eval_symbol_g0(0.0, h);
  return {[h](double xi) { return std::complex<double>{eval_symbol_g0(xi, h), 0.0}; },
          SymbolParity::even_real};
}

Symbol shift_symbol(double alpha) {
  return {[alpha](double xi) {
            return std::complex<double>{std::cos(alpha * xi), std::sin(alpha * xi)};
          },
          SymbolParity::general};
}

MultiplierTable::MultiplierTable(const Symbol& sym, const Grid& grid) {
  const int n = grid.n_modes;
  values_.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    values_[static_cast<size_t>(i)] = sym.eval(grid.xi[static_cast<size_t>(i)]);
  // Nyquist projection: keep the real part only.
  auto& nyq = values_[static_cast<size_t>(grid.nyquist_index())];
  nyq = {nyq.real(), 0.0};
}

void MultiplierTable::apply(Spectrum& spec) const {
  for (size_t i = 0; i < spec.size(); ++i) spec[i] *= values_[i];
}

RealField MultiplierTable::apply(const RealField& f) const {
  Spectrum spec = fft_forward(f);
  apply(spec);
  return fft_inverse(f.grid(), spec);
}

RealField apply_multiplier(const Symbol& sym, const RealField& f) {
  return MultiplierTable(sym, f.grid()).apply(f);
}

RealField spatial_shift(const RealField& f, double alpha) {
  return apply_multiplier(shift_symbol(alpha), f);
}

void dealias_two_thirds(Spectrum& spec) {
  const int n = static_cast<int>(spec.size());
  const int kmax = n / 3;
  for (int j = 0; j < n; ++j) {
    const int k = (j < n / 2) ? j : j - n;
    if (std::abs(k) > kmax) spec[static_cast<size_t>(j)] = {0.0, 0.0};
  }
}

}  // namespace stochwave
