#pragma once

#include <map>
#include <string>
#include <vector>

#include "stochwave/grid.hpp"
#include "stochwave/models.hpp"
#include "stochwave/noise.hpp"

namespace stochwave {

// A sampled observable along one run, with enough metadata to identify the
// run it came from.
struct ObserverSeries {
  std::string name;
  std::vector<double> times;
  std::vector<double> values;
  std::map<std::string, std::string> metadata;  // model, scheme, seed, ...
};

// X^s norm of a two-component state:
//   ||(eta, v)||_{X^s}^2 = ||eta||_{H^s}^2 + ||K^{-1} v||_{H^s}^2
// with discrete H^s weights (1 + xi^2)^s, Parseval-normalized so that
// s = 0 reproduces the L^2 norm.
double xs_norm(const State& u, double s, double h);

// Spectrally weighted H^s norm of a single field.
double hs_norm(const RealField& f, double s);

// Per-component coefficients (3b/2h) gamma_j int (dx r)^3 dx predicting the
// one-step Stratonovich increment of int r K_b r dx for the BBM model in its
// a = 0, b > 0 configuration. Throws UsageError otherwise.
std::vector<double> bbm_h1_drift_prediction(const RealField& r, const ModelSpec& model,
                                            const NoiseSpec& noise);

// int r K_b r dx, the BBM H^1-type invariant.
double bbm_h1_functional(const RealField& r, double b);

// The model's own conserved functional (delegates to the catalogue energy).
double conserved_functional(const ModelSpec& model, const State& u);

// Flat-surface Dirichlet-Neumann operator G0 = D tanh(h D).
RealField dno_g0(const RealField& phi, double h);

// First-order correction G1(eta) Phi = -dx(eta dx Phi) - G0(eta G0 Phi).
RealField dno_g1(const RealField& eta, const RealField& phi, double h);

// (1/2) int (g eta^2 + Phi (G0 + G1(eta)) Phi) dx, the full-surface energy
// truncated at first order in eta.
double energy_full_truncated(const RealField& eta, const RealField& phi, double g, double h);

// Least-squares slope of log(y) against log(x); ignores non-positive values.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Mean-zero random field with Gaussian-decaying spectrum (e^{-(k/decay)^2})
// and an empty Nyquist mode; deterministic in the seed. For property checks.
RealField random_smooth_field(const Grid& grid, std::uint64_t seed,
                              double decay_modes = 8.0, double amplitude = 1.0);

void write_series_csv(const ObserverSeries& series, std::ostream& os);
void write_series_metadata_json(const ObserverSeries& series, std::ostream& os);

}  // namespace stochwave
