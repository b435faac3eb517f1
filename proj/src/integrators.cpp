#include "stochwave/integrators.hpp"

#include <cmath>

#include "stochwave/errors.hpp"
#include "stochwave/fft.hpp"

namespace stochwave {

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::mild_euler: return "mild-euler";
    case Scheme::duhamel_euler: return "duhamel-euler";
    case Scheme::duhamel_milstein: return "duhamel-milstein";
  }
  throw UsageError("unknown scheme");
}

Scheme scheme_from_name(const std::string& name) {
  for (Scheme s : {Scheme::mild_euler, Scheme::duhamel_euler, Scheme::duhamel_milstein})
    if (scheme_name(s) == name) return s;
  throw ConfigError("unknown scheme name: " + name);
}

namespace {

// sin(x)/x with the removable singularity filled by its limit.
double sinc(double x) {
  if (std::fabs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double weighted_increment(const NoiseSpec& noise, std::span<const double> dW) {
  if (static_cast<int>(dW.size()) != noise.components())
    throw UsageError("increment count does not match noise components");
  double w = 0.0;
  for (size_t j = 0; j < dW.size(); ++j) w += noise.gammas[j] * dW[j];
  return w;
}

}  // namespace

void Propagator::build(const ModelSpec& model, const Grid& grid, double dt,
                       const std::vector<std::complex<double>>& noise_factor) {
  grid_ = &grid;
  dt_ = dt;
  components_ = model.components();
  const int n = grid.n_modes;
  const int nyq = grid.nyquist_index();
  m11_.resize(static_cast<size_t>(n));
  if (components_ == 2) {
    m12_.resize(static_cast<size_t>(n));
    m21_.resize(static_cast<size_t>(n));
    m22_.resize(static_cast<size_t>(n));
  }
  for (int k = 0; k < n; ++k) {
    const double xi = grid.xi[static_cast<size_t>(k)];
    const std::complex<double> nf = noise_factor[static_cast<size_t>(k)];
    if (components_ == 1) {
      m11_[static_cast<size_t>(k)] =
          std::exp(linear_drift_scalar(model, xi) * dt) * nf;
    } else {
      // exp(dt [[0, a12], [a21, 0]]) with a12 a21 = -Omega^2 real:
      // diag cos(Omega dt), off-diagonals a_ij sin(Omega dt)/Omega.
      const Mat2c a = linear_drift_matrix(model, xi);
      const double omega_sq = -(a[1] * a[2]).real();
      const double omega = std::sqrt(std::max(omega_sq, 0.0));
      const double c = std::cos(omega * dt);
      const double s_over = dt * sinc(omega * dt);
      m11_[static_cast<size_t>(k)] = c * nf;
      m12_[static_cast<size_t>(k)] = a[1] * s_over * nf;
      m21_[static_cast<size_t>(k)] = a[2] * s_over * nf;
      m22_[static_cast<size_t>(k)] = c * nf;
    }
  }
  // Nyquist projection keeps real fields real; only the highest mode is touched.
  auto project = [nyq](std::vector<std::complex<double>>& m) {
    if (!m.empty()) m[static_cast<size_t>(nyq)] = {m[static_cast<size_t>(nyq)].real(), 0.0};
  };
  project(m11_);
  project(m12_);
  project(m21_);
  project(m22_);
}

Propagator Propagator::duhamel(const ModelSpec& model, const Grid& grid, double dt,
                               std::span<const double> dW, const NoiseSpec& noise) {
  const double w = weighted_increment(noise, dW);
  std::vector<std::complex<double>> phase(static_cast<size_t>(grid.n_modes));
  for (int k = 0; k < grid.n_modes; ++k) {
    const double xi = grid.xi[static_cast<size_t>(k)];
    phase[static_cast<size_t>(k)] = {std::cos(w * xi), std::sin(w * xi)};
  }
  Propagator p;
  p.dw_.assign(dW.begin(), dW.end());
  p.build(model, grid, dt, phase);
  return p;
}

Propagator Propagator::mild(const ModelSpec& model, const Grid& grid, double dt,
                            const NoiseSpec& noise) {
  const double half_sum = 0.5 * noise.sum_gamma_sq();
  std::vector<std::complex<double>> damp(static_cast<size_t>(grid.n_modes));
  for (int k = 0; k < grid.n_modes; ++k) {
    const double xi = grid.xi[static_cast<size_t>(k)];
    damp[static_cast<size_t>(k)] = {std::exp(-half_sum * xi * xi * dt), 0.0};
  }
  Propagator p;
  p.build(model, grid, dt, damp);
  return p;
}

void Propagator::apply_spectra(std::vector<Spectrum>& spectra) const {
  if (static_cast<int>(spectra.size()) != components_)
    throw UsageError("spectra count does not match propagator components");
  if (components_ == 1) {
    for (size_t k = 0; k < m11_.size(); ++k) spectra[0][k] *= m11_[k];
    return;
  }
  for (size_t k = 0; k < m11_.size(); ++k) {
    const auto s1 = spectra[0][k];
    const auto s2 = spectra[1][k];
    spectra[0][k] = m11_[k] * s1 + m12_[k] * s2;
    spectra[1][k] = m21_[k] * s1 + m22_[k] * s2;
  }
}

State Propagator::apply(const State& u) const {
  if (u.components() != components_)
    throw UsageError("state components do not match propagator");
  std::vector<Spectrum> spectra;
  spectra.reserve(u.comps.size());
  for (const auto& c : u.comps) spectra.push_back(fft_forward(c));
  apply_spectra(spectra);
  State out;
  for (auto& s : spectra) out.comps.push_back(fft_inverse(*grid_, s));
  return out;
}

const std::vector<std::complex<double>>& Propagator::entry(int row, int col) const {
  if (row == 0 && col == 0) return m11_;
  if (row == 0 && col == 1) return m12_;
  if (row == 1 && col == 0) return m21_;
  return m22_;
}

namespace {

State finish_step(const Propagator& prop, const State& incr, const State& u_before) {
  State out = prop.apply(incr);
  if (!out.all_finite())
    throw BlowUpError("non-finite state after step", -1, u_before);
  return out;
}

}  // namespace

State step_mild_euler(const ModelOps& ops, const State& u, double dt,
                      std::span<const double> dW, const NoiseSpec& noise) {
  const double w = weighted_increment(noise, dW);
  State incr = u;
  add_scaled(incr, dt, ops.ito_corrected_drift(u, noise));
  if (w != 0.0) {
    State lin = ops.spatial_derivative(u);
    lin += ops.noise_nonlinearity(u);
    add_scaled(incr, w, lin);
  }
  return finish_step(Propagator::mild(ops.model(), ops.grid(), dt, noise), incr, u);
}

State step_duhamel_euler(const ModelOps& ops, const State& u, double dt,
                         std::span<const double> dW, const NoiseSpec& noise) {
  const double w = weighted_increment(noise, dW);
  State incr = u;
  add_scaled(incr, dt, ops.duhamel_nonlinearity(u, noise));
  if (w != 0.0) add_scaled(incr, w, ops.noise_nonlinearity(u));
  return finish_step(Propagator::duhamel(ops.model(), ops.grid(), dt, dW, noise), incr, u);
}

State step_duhamel_milstein(const ModelOps& ops, const State& u, double dt,
                            std::span<const double> dW, const NoiseSpec& noise) {
  const double w = weighted_increment(noise, dW);
  State incr = u;
  add_scaled(incr, dt, ops.drift_nonlinearity(u));
  if (w != 0.0) {
    const State g = ops.noise_nonlinearity(u);
    add_scaled(incr, w, g);
    add_scaled(incr, 0.5 * w * w, ops.noise_nonlinearity_derivative(u, g));
  }
  return finish_step(Propagator::duhamel(ops.model(), ops.grid(), dt, dW, noise), incr, u);
}

State step(Scheme scheme, const ModelOps& ops, const State& u, double dt,
           std::span<const double> dW, const NoiseSpec& noise) {
  switch (scheme) {
    case Scheme::mild_euler: return step_mild_euler(ops, u, dt, dW, noise);
    case Scheme::duhamel_euler: return step_duhamel_euler(ops, u, dt, dW, noise);
    case Scheme::duhamel_milstein: return step_duhamel_milstein(ops, u, dt, dW, noise);
  }
  throw UsageError("unknown scheme");
}

Observer make_observer(const std::string& name) {
  if (name == "energy")
    return {name, [](const ModelOps& ops, const State& u) { return ops.energy(u); }};
  if (name == "mass")
    return {name, [](const ModelOps&, const State& u) { return integral(u[0]); }};
  if (name == "l2")
    return {name, [](const ModelOps&, const State& u) { return l2_norm(u); }};
  if (name == "xs0")
    return {name, [](const ModelOps& ops, const State& u) {
              return u.components() == 2 ? xs_norm(u, 0.0, ops.model().depth)
                                         : l2_norm(u);
            }};
  throw ConfigError("unknown observer: " + name);
}

Trajectory simulate(const ModelSpec& model, const State& u0, double T, double dt,
                    Scheme scheme, const BrownianPath& path, const NoiseSpec& noise,
                    const SimulateOptions& opts) {
  if (dt <= 0.0) throw ConfigError("dt must be positive");
  const double steps_real = T / dt;
  const int n_steps = static_cast<int>(std::llround(steps_real));
  if (T < 0.0 || std::fabs(steps_real - n_steps) > 1e-9 * std::max(1.0, steps_real))
    throw ConfigError("T must be a non-negative integer multiple of dt");
  if (n_steps > 0) {
    if (path.components != noise.components())
      throw ConfigError("path components do not match noise spec");
    if (path.n_steps < n_steps) throw ConfigError("Brownian path too short for run");
    if (std::fabs(path.dt - dt) > 1e-12 * dt)
      throw ConfigError("path step size does not match dt");
  }

  const ModelOps ops(model, u0.grid(), opts.model_options);
  std::vector<Observer> observers = opts.observers;
  if (observers.empty()) {
    observers.push_back(make_observer("energy"));
    observers.push_back(make_observer("mass"));
  }

  Trajectory traj;
  traj.series.resize(observers.size());
  for (size_t i = 0; i < observers.size(); ++i) traj.series[i].name = observers[i].name;

  auto sample = [&](double t, const State& u) {
    for (size_t i = 0; i < observers.size(); ++i) {
      traj.series[i].times.push_back(t);
      traj.series[i].values.push_back(observers[i].eval(ops, u));
    }
  };
  auto snapshot = [&](double t, const State& u) {
    traj.snapshot_times.push_back(t);
    traj.snapshots.push_back(u);
  };

  State u = u0;
  sample(0.0, u);
  snapshot(0.0, u);
  const double norm0 = l2_norm(u0);

  for (int n = 0; n < n_steps; ++n) {
    State next;
    try {
      next = step(scheme, ops, u, dt, path.step(n), noise);
    } catch (const BlowUpError&) {
      throw BlowUpError("blow-up at step " + std::to_string(n) + " (t = " +
                            std::to_string(n * dt) + ")",
                        n, u);
    }
    u = std::move(next);
    const double t = (n + 1) * dt;
    if (norm0 > 0.0 && l2_norm(u) > opts.blowup_norm_factor * norm0)
      throw BlowUpError("norm grew beyond " + std::to_string(opts.blowup_norm_factor) +
                            "x initial at step " + std::to_string(n),
                        n, u);
    const bool last = (n + 1 == n_steps);
    if (last || (opts.observer_stride > 0 && (n + 1) % opts.observer_stride == 0))
      sample(t, u);
    if (last || (opts.snapshot_stride > 0 && (n + 1) % opts.snapshot_stride == 0))
      snapshot(t, u);
  }

  traj.t_final = n_steps * dt;
  traj.steps = n_steps;
  return traj;
}

}  // namespace stochwave
