#include "stochwave/grid.hpp"

#include <cmath>
#include <numbers>

#include "stochwave/errors.hpp"

namespace stochwave {

Grid make_grid(double length, int n_modes) {
  if (length <= 0.0)
    throw ConfigError("grid length must be positive, got " + std::to_string(length));
  if (n_modes < 4 || n_modes % 2 != 0)
    throw ConfigError("grid mode count must be even and >= 4, got " + std::to_string(n_modes));

  Grid g;
  g.length = length;
  g.n_modes = n_modes;
  g.dx = length / n_modes;
  g.x.resize(static_cast<size_t>(n_modes));
  g.xi.resize(static_cast<size_t>(n_modes));
  const double dxi = 2.0 * std::numbers::pi / length;
  for (int j = 0; j < n_modes; ++j) {
    g.x[static_cast<size_t>(j)] = -0.5 * length + j * g.dx;
    const int k = (j < n_modes / 2) ? j : j - n_modes;
    g.xi[static_cast<size_t>(j)] = dxi * k;
  }
  return g;
}

RealField::RealField(const Grid& grid, std::vector<double> samples)
    : grid_(&grid), samples_(std::move(samples)) {
  if (static_cast<int>(samples_.size()) != grid.n_modes)
    throw UsageError("sample count does not match grid size");
}

RealField& RealField::operator+=(const RealField& other) {
  for (size_t i = 0; i < samples_.size(); ++i) samples_[i] += other.samples_[i];
  return *this;
}

RealField& RealField::operator-=(const RealField& other) {
  for (size_t i = 0; i < samples_.size(); ++i) samples_[i] -= other.samples_[i];
  return *this;
}

RealField& RealField::operator*=(double s) {
  for (double& v : samples_) v *= s;
  return *this;
}

RealField pointwise(const RealField& a, const RealField& b) {
  RealField out(a.grid());
  for (int i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

void add_scaled(RealField& y, double alpha, const RealField& x) {
  for (int i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

double max_abs(const RealField& f) {
  double m = 0.0;
  for (int i = 0; i < f.size(); ++i) m = std::max(m, std::fabs(f[i]));
  return m;
}

double l2_norm(const RealField& f) {
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i) s += f[i] * f[i];
  return std::sqrt(s * f.grid().dx);
}

double inner(const RealField& a, const RealField& b) {
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s * a.grid().dx;
}

double integral(const RealField& f) {
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i) s += f[i];
  return s * f.grid().dx;
}

}  // namespace stochwave
