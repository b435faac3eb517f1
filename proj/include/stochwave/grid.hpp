#pragma once

#include <cstddef>
#include <vector>

namespace stochwave {

// Uniform periodic grid of N points on a domain of length L, centred at 0,
// together with its FFT-ordered wavenumber set xi_k = 2*pi*k/L,
// k = 0, 1, ..., N/2-1, -N/2, ..., -1.
struct Grid {
  double length = 0.0;          // L (m)
  int n_modes = 0;              // N, even, >= 4
  double dx = 0.0;              // L/N (m)
  std::vector<double> x;        // sample points, x_j = -L/2 + j*dx
  std::vector<double> xi;       // wavenumbers in FFT order (1/m)

  int nyquist_index() const { return n_modes / 2; }
  bool operator==(const Grid& other) const {
    return length == other.length && n_modes == other.n_modes;
  }
};

// Throws ConfigError unless L > 0, N even and N >= 4.
Grid make_grid(double length, int n_modes);

// A real-valued sample vector living on a Grid. The grid must outlive the
// field. Plain value semantics; realness is structural.
class RealField {
 public:
  RealField() = default;
  RealField(const Grid& grid, double fill = 0.0)
      : grid_(&grid), samples_(static_cast<size_t>(grid.n_modes), fill) {}
  RealField(const Grid& grid, std::vector<double> samples);

  const Grid& grid() const { return *grid_; }
  int size() const { return static_cast<int>(samples_.size()); }
  double& operator[](int i) { return samples_[static_cast<size_t>(i)]; }
  double operator[](int i) const { return samples_[static_cast<size_t>(i)]; }
  std::vector<double>& samples() { return samples_; }
  const std::vector<double>& samples() const { return samples_; }

  RealField& operator+=(const RealField& other);
  RealField& operator-=(const RealField& other);
  RealField& operator*=(double s);

  friend RealField operator+(RealField a, const RealField& b) { return a += b; }
  friend RealField operator-(RealField a, const RealField& b) { return a -= b; }
  friend RealField operator*(RealField a, double s) { return a *= s; }
  friend RealField operator*(double s, RealField a) { return a *= s; }

 private:
  const Grid* grid_ = nullptr;
  std::vector<double> samples_;
};

// Pointwise product a*b on the shared grid.
RealField pointwise(const RealField& a, const RealField& b);

// axpy-style update: y += alpha * x.
void add_scaled(RealField& y, double alpha, const RealField& x);

double max_abs(const RealField& f);
double l2_norm(const RealField& f);             // sqrt(dx * sum f^2)
double inner(const RealField& a, const RealField& b);  // dx * sum a*b
double integral(const RealField& f);            // dx * sum f

}  // namespace stochwave
