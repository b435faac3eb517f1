#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace stochwave {

// Noise amplitudes gamma_j, tied to the non-dimensional level eps through
// (1/2) sum_j gamma_j^2 = sqrt(g h^3) * eps.
struct NoiseSpec {
  std::vector<double> gammas;   // m * s^{-1/2}
  double epsilon = 0.0;

  int components() const { return static_cast<int>(gammas.size()); }
  double sum_gamma_sq() const;
};

// Equal-amplitude split gamma_j = sqrt(2 sqrt(g h^3) eps / m).
NoiseSpec gammas_from_epsilon(double epsilon, int m, double g, double h);

// Wiener increments dW_j^n ~ N(0, dt), laid out step-major. Increments are a
// pure function of (seed, component, step index), so the same seed always
// reproduces the same path bit-for-bit and component streams are independent
// by construction.
struct BrownianPath {
  std::uint64_t seed = 0;
  int n_steps = 0;
  int components = 0;
  double dt = 0.0;
  std::vector<double> increments;  // [step * components + j]

  double increment(int step, int j) const {
    return increments[static_cast<size_t>(step) * components + j];
  }
  std::span<const double> step(int n) const {
    return {increments.data() + static_cast<size_t>(n) * components,
            static_cast<size_t>(components)};
  }
  // W_j(n dt) - W_j(0), summed left-to-right.
  double partial_sum(int j, int n_steps_summed) const;
  double total(int j) const { return partial_sum(j, n_steps); }
};

BrownianPath sample_path(std::uint64_t seed, int n_steps, double dt, int m);

// Merge groups of `factor` consecutive increments (left-to-right sums) into
// a path on step size dt*factor: the same Brownian motion, coarser clock.
BrownianPath coarsen_path(const BrownianPath& path, int factor);

// (step, component, increment) rows with full round-trip precision.
void write_path_csv(const BrownianPath& path, std::ostream& os);

// Flat binary layout: magic, n_steps, components, dt, seed, increments.
void write_path_binary(const BrownianPath& path, std::ostream& os);
BrownianPath read_path_binary(std::istream& is);

// Standard normal draw for (seed, stream, index): the Philox-backed
// generator underlying sample_path, exposed for tests.
double normal_sample(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace stochwave
