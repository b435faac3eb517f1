#include "stochwave/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "stochwave/errors.hpp"
#include "stochwave/fft.hpp"
#include "stochwave/symbols.hpp"

namespace stochwave {

double hs_norm(const RealField& f, double s) {
  const Grid& grid = f.grid();
  const Spectrum spec = fft_forward(f);
  // Parseval normalization dx^2 / L turns the coefficient sum into the
  // continuum L^2 integral at s = 0.
  const double scale = grid.dx * grid.dx / grid.length;
  double total = 0.0;
  for (int k = 0; k < grid.n_modes; ++k) {
    const double xi = grid.xi[static_cast<size_t>(k)];
    const double weight = std::pow(1.0 + xi * xi, s);
    total += weight * std::norm(spec[static_cast<size_t>(k)]);
  }
  return std::sqrt(total * scale);
}

double xs_norm(const State& u, double s, double h) {
  if (u.components() != 2) throw UsageError("xs_norm needs a two-component state");
  const double n_eta = hs_norm(u[0], s);
  const RealField kinv_v = apply_multiplier(k_inverse_symbol(h), u[1]);
  const double n_v = hs_norm(kinv_v, s);
  return std::sqrt(n_eta * n_eta + n_v * n_v);
}

std::vector<double> bbm_h1_drift_prediction(const RealField& r, const ModelSpec& model,
                                            const NoiseSpec& noise) {
  if (model.kind != ModelKind::bbm)
    throw UsageError("H1-drift prediction is specific to the BBM model");
  const double h = model.depth, b = model.b;
  if (std::fabs(model.a()) > 1e-12 * h * h || b <= 0.0)
    throw UsageError("H1-drift formula requires the a = 0, b > 0 configuration");
  const RealField rx = apply_multiplier(derivative_symbol(), r);
  double cube = 0.0;
  for (int i = 0; i < rx.size(); ++i) cube += rx[i] * rx[i] * rx[i];
  cube *= r.grid().dx;
  const double factor = 1.5 * b / h * cube;
  std::vector<double> coeffs;
  coeffs.reserve(noise.gammas.size());
  for (double gamma : noise.gammas) coeffs.push_back(factor * gamma);
  return coeffs;
}

double bbm_h1_functional(const RealField& r, double b) {
  return inner(r, apply_multiplier(kb_symbol(b), r));
}

double conserved_functional(const ModelSpec& model, const State& u) {
  return energy(model, u);
}

RealField dno_g0(const RealField& phi, double h) {
  return apply_multiplier(g0_symbol(h), phi);
}

RealField dno_g1(const RealField& eta, const RealField& phi, double h) {
  if (!(eta.grid() == phi.grid())) throw UsageError("dno_g1 fields must share one grid");
  const Symbol deriv = derivative_symbol();
  const RealField term1 =
      apply_multiplier(deriv, pointwise(eta, apply_multiplier(deriv, phi)));
  const RealField term2 = dno_g0(pointwise(eta, dno_g0(phi, h)), h);
  RealField out = term1 * -1.0;
  out -= term2;
  return out;
}

double energy_full_truncated(const RealField& eta, const RealField& phi, double g, double h) {
  RealField g_phi = dno_g0(phi, h);
  g_phi += dno_g1(eta, phi, h);
  return 0.5 * (g * inner(eta, eta) + inner(phi, g_phi));
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] <= 0.0 || y[i] <= 0.0) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw UsageError("need at least two positive points for a slope fit");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

RealField random_smooth_field(const Grid& grid, std::uint64_t seed, double decay_modes,
                              double amplitude) {
  const int n = grid.n_modes;
  Spectrum spec(static_cast<size_t>(n), {0.0, 0.0});
  int idx = 0;
  for (int k = 1; k < n / 2; ++k) {
    const double re = normal_sample(seed, 7001, static_cast<std::uint64_t>(idx++));
    const double im = normal_sample(seed, 7001, static_cast<std::uint64_t>(idx++));
    const double decay = std::exp(-(static_cast<double>(k) / decay_modes) *
                                  (static_cast<double>(k) / decay_modes));
    spec[static_cast<size_t>(k)] = {re * decay, im * decay};
    spec[static_cast<size_t>(n - k)] = std::conj(spec[static_cast<size_t>(k)]);
  }
  RealField f = fft_inverse(grid, spec);
  const double peak = max_abs(f);
  if (peak > 0.0) f *= amplitude / peak;
  return f;
}

void write_series_csv(const ObserverSeries& series, std::ostream& os) {
  os << "t," << series.name << '\n';
  char buf[64];
  for (size_t i = 0; i < series.times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", series.times[i]);
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", series.values[i]);
    os << buf << '\n';
  }
}

void write_series_metadata_json(const ObserverSeries& series, std::ostream& os) {
  os << "{\n  \"observable\": \"" << series.name << "\"";
  for (const auto& [key, value] : series.metadata)
    os << ",\n  \"" << key << "\": \"" << value << "\"";
  os << "\n}\n";
}

}  // namespace stochwave
