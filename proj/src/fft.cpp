#include "stochwave/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "stochwave/errors.hpp"

namespace stochwave {
namespace {

// FFTW plan creation is not thread-safe; execution on private buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Per-thread c2c plans and scratch, one set per transform size.
struct PlanSet {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  int n = 0;

  explicit PlanSet(int n) : n(n) {
    in = fftw_alloc_complex(static_cast<size_t>(n));
    out = fftw_alloc_complex(static_cast<size_t>(n));
    std::lock_guard<std::mutex> lock(planner_mutex());
    forward = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~PlanSet() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(in);
    fftw_free(out);
  }
  PlanSet(const PlanSet&) = delete;
  PlanSet& operator=(const PlanSet&) = delete;
};

PlanSet& plans_for(int n) {
  thread_local std::map<int, std::unique_ptr<PlanSet>> cache;
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, std::make_unique<PlanSet>(n)).first;
  return *it->second;
}

}  // namespace

Spectrum fft_forward(const RealField& f) {
  const int n = f.size();
  PlanSet& p = plans_for(n);
  for (int i = 0; i < n; ++i) {
    p.in[i][0] = f[i];
    p.in[i][1] = 0.0;
  }
  fftw_execute(p.forward);
  Spectrum spec(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    spec[static_cast<size_t>(i)] = {p.out[i][0], p.out[i][1]};
  return spec;
}

namespace {

RealField inverse_impl(const Grid& grid, const Spectrum& spec, bool check) {
  const int n = grid.n_modes;
  if (static_cast<int>(spec.size()) != n)
    throw UsageError("spectrum length does not match grid size");
  PlanSet& p = plans_for(n);
  for (int i = 0; i < n; ++i) {
    p.in[i][0] = spec[static_cast<size_t>(i)].real();
    p.in[i][1] = spec[static_cast<size_t>(i)].imag();
  }
  fftw_execute(p.backward);
  RealField out(grid);
  const double scale = 1.0 / n;
  double real_sq = 0.0, imag_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double re = p.out[i][0] * scale;
    const double im = p.out[i][1] * scale;
    out[i] = re;
    real_sq += re * re;
    imag_sq += im * im;
  }
  if (check) {
    // Residual measured against the field's own norm, with an absolute
    // floor so the zero field passes.
    const double tol = 1e-10 * std::sqrt(real_sq) + 1e-300;
    if (std::sqrt(imag_sq) > tol)
      throw InternalError("non-Hermitian spectrum: imaginary residual " +
                          std::to_string(std::sqrt(imag_sq)) +
                          " exceeds 1e-10 * field norm");
  }
  return out;
}

}  // namespace

RealField fft_inverse(const Grid& grid, const Spectrum& spec) {
  return inverse_impl(grid, spec, true);
}

RealField fft_inverse_unchecked(const Grid& grid, const Spectrum& spec) {
  return inverse_impl(grid, spec, false);
}

}  // namespace stochwave
