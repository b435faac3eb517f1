#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stochwave/diagnostics.hpp"
#include "stochwave/models.hpp"
#include "stochwave/noise.hpp"

namespace stochwave {

enum class Scheme { mild_euler, duhamel_euler, duhamel_milstein };

std::string scheme_name(Scheme scheme);
Scheme scheme_from_name(const std::string& name);

// A stochastic trajectory left the resolvable regime: a non-finite sample
// appeared or the norm grew past the configured factor.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& msg, int step_index, State last_finite_state)
      : std::runtime_error(msg),
        step_index(step_index),
        last_finite_state(std::move(last_finite_state)) {}
  int step_index;
  State last_finite_state;
};

// Per-wavenumber closed-form exponential of the linearized stochastic flow.
// Two-component models carry a 2x2 complex matrix per mode, scalar models a
// single factor. The Nyquist entries are projected onto their real parts.
class Propagator {
 public:
  // exp(A dt) exp(sum_j B_j dW_j): the exact fundamental matrix of the
  // linear stochastic system, factored because A and B_j commute.
  static Propagator duhamel(const ModelSpec& model, const Grid& grid, double dt,
                            std::span<const double> dW, const NoiseSpec& noise);

  // exp((A + (1/2) sum_j B_j^2) dt): the Ito mild-form generator; the noise
  // contributes a real damping exp(-(1/2) sum gamma^2 xi^2 dt).
  static Propagator mild(const ModelSpec& model, const Grid& grid, double dt,
                         const NoiseSpec& noise);

  State apply(const State& u) const;
  void apply_spectra(std::vector<Spectrum>& spectra) const;

  int components() const { return components_; }
  double dt() const { return dt_; }
  const std::vector<double>& increments_used() const { return dw_; }

  // Per-mode entries (row-major for two components); exposed for tests.
  const std::vector<std::complex<double>>& entry(int row, int col) const;

 private:
  Propagator() = default;
  void build(const ModelSpec& model, const Grid& grid, double dt,
             const std::vector<std::complex<double>>& noise_factor);

  int components_ = 1;
  double dt_ = 0.0;
  std::vector<double> dw_;
  const Grid* grid_ = nullptr;
  std::vector<std::complex<double>> m11_, m12_, m21_, m22_;
};

// One step of each scheme. `dW` holds the increments of every noise
// component for this step. Throws BlowUpError on non-finite output.
//
//   mild Euler:       e^{A~ dt} (u + F(u) dt + (dx u + g(u)) w)
//   Duhamel Euler:    S(dt, dW) (u + f~(u) dt + g(u) w)
//   Duhamel Milstein: S(dt, dW) (u + f(u) dt + g(u) w + (1/2) g'(u)g(u) w^2)
//
// with w = sum_j gamma_j dW_j.
State step_mild_euler(const ModelOps& ops, const State& u, double dt,
                      std::span<const double> dW, const NoiseSpec& noise);
State step_duhamel_euler(const ModelOps& ops, const State& u, double dt,
                         std::span<const double> dW, const NoiseSpec& noise);
State step_duhamel_milstein(const ModelOps& ops, const State& u, double dt,
                            std::span<const double> dW, const NoiseSpec& noise);

State step(Scheme scheme, const ModelOps& ops, const State& u, double dt,
           std::span<const double> dW, const NoiseSpec& noise);

// A named scalar functional of the state, sampled along a run.
struct Observer {
  std::string name;
  std::function<double(const ModelOps&, const State&)> eval;
};

// Built-in observers: "energy", "mass" (integral of the first component),
// "l2" and "xs0".
Observer make_observer(const std::string& name);

struct SimulateOptions {
  int snapshot_stride = 0;        // steps between stored snapshots; 0 = ends only
  int observer_stride = 1;        // steps between observer samples
  std::vector<Observer> observers;
  ModelOpsOptions model_options;
  double blowup_norm_factor = 1e6;
};

struct Trajectory {
  std::vector<double> snapshot_times;
  std::vector<State> snapshots;      // always includes t = 0 and t = T
  std::vector<ObserverSeries> series;
  double t_final = 0.0;
  int steps = 0;
};

// Advance u0 to time T = n dt with the chosen scheme, sampling observers and
// snapshots. The path supplies the Wiener increments (path.dt must equal dt
// and the path must be long enough). Bitwise reproducible from its inputs.
Trajectory simulate(const ModelSpec& model, const State& u0, double T, double dt,
                    Scheme scheme, const BrownianPath& path, const NoiseSpec& noise,
                    const SimulateOptions& opts = {});

}  // namespace stochwave
