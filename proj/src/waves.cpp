#include "stochwave/waves.hpp"

#include <cmath>

#include "stochwave/errors.hpp"
#include "stochwave/fft.hpp"
#include "stochwave/symbols.hpp"

namespace stochwave {
namespace {

// Even-real multipliers (Lambda, M) of the traveling-wave equation
// c r = Lambda r + (3/4h) M r^2 for each unidirectional model.
void traveling_wave_multipliers(const ModelSpec& model, const Grid& grid,
                                std::vector<double>& lambda, std::vector<double>& mult) {
  const double g = model.gravity, h = model.depth;
  const int n = grid.n_modes;
  lambda.resize(static_cast<size_t>(n));
  mult.resize(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double xi = grid.xi[static_cast<size_t>(k)];
    double lam = 0.0, m = 0.0;
    switch (model.kind) {
      case ModelKind::bbm: {
        const double ka = eval_symbol_ka(xi, model.a());
        const double kb = eval_symbol_kb(xi, model.b);
        lam = std::sqrt(g * h * ka) / kb;
        m = lam;
        break;
      }
      case ModelKind::modified_bbm: {
        const double ka = eval_symbol_ka(xi, model.a());
        const double kb = eval_symbol_kb(xi, model.b);
        lam = std::sqrt(g * h) * std::sqrt(ka) / kb;
        m = std::sqrt(g * h) * ka / (kb * kb);
        break;
      }
      case ModelKind::fd_unidirectional:
        lam = std::sqrt(g * h) * eval_symbol_k(xi, h);
        m = lam;
        break;
      case ModelKind::whitham:
        lam = std::sqrt(g * h) * eval_symbol_k(xi, h);
        m = std::sqrt(g * h);
        break;
      default:
        throw UsageError("solitary solver needs a unidirectional model");
    }
    lambda[static_cast<size_t>(k)] = lam;
    mult[static_cast<size_t>(k)] = m;
  }
}

RealField apply_real_table(const std::vector<double>& table, const RealField& f) {
  Spectrum spec = fft_forward(f);
  for (size_t k = 0; k < spec.size(); ++k) spec[k] *= table[k];
  return fft_inverse(f.grid(), spec);
}

// KdV-informed Gaussian seed: amplitude 2 h delta, curvature matched to the
// sech^2 width lambda^2 = 3 delta / (2 h^2), with delta = c/sqrt(gh) - 1.
RealField initial_bump(const Grid& grid, double c, double g, double h) {
  const double delta = c / std::sqrt(g * h) - 1.0;
  const double amp = 2.0 * h * delta;
  const double lam_sq = 1.5 * delta / (h * h);
  RealField r(grid);
  for (int i = 0; i < grid.n_modes; ++i) {
    const double x = grid.x[static_cast<size_t>(i)];
    r[i] = amp * std::exp(-lam_sq * x * x);
  }
  return r;
}

void require_supercritical(double c, double g, double h) {
  if (!(c > std::sqrt(g * h)))
    throw ConfigError("solitary speed must be supercritical: c > sqrt(g h)");
}

}  // namespace

TravelingWave solve_solitary_unidirectional(const ModelSpec& model, double c,
                                            const Grid& grid, const RealField* guess) {
  require_supercritical(c, model.gravity, model.depth);
  std::vector<double> lambda, mult;
  traveling_wave_multipliers(model, grid, lambda, mult);

  const double h = model.depth;
  const double coeff = 0.75 / h;
  std::vector<double> inv(lambda.size());
  for (size_t k = 0; k < lambda.size(); ++k) inv[k] = 1.0 / (c - lambda[k]);

  RealField r = guess ? *guess : initial_bump(grid, c, model.gravity, model.depth);
  const int max_iter = 500;
  const double tol = 1e-10;
  double residual = 1.0;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    const RealField lam_r = apply_real_table(lambda, r);
    const RealField nonlin = apply_real_table(mult, pointwise(r, r)) * coeff;
    // relative residual of c r = Lambda r + N(r)
    RealField eq = r * c;
    eq -= lam_r;
    eq -= nonlin;
    residual = l2_norm(eq) / std::max(l2_norm(r) * c, 1e-300);
    if (residual <= tol) break;

    const double num = c * inner(r, r) - inner(lam_r, r);
    const double den = inner(nonlin, r);
    if (den == 0.0) throw SolverError("Petviashvili stabilizer degenerate", residual);
    const double s = num / den;
    r = apply_real_table(inv, nonlin) * (s * s);
  }
  if (residual > tol)
    throw SolverError("Petviashvili iteration did not converge", residual);

  TravelingWave wave;
  wave.profile = State(std::move(r));
  wave.speed = c;
  wave.residual = residual;
  wave.iterations = iter;
  return wave;
}

TravelingWave solitary_seed_wb(double c, const Grid& grid, double g, double h) {
  require_supercritical(c, g, h);
  const ModelSpec whitham = ModelSpec::whitham(g, h);
  TravelingWave seed = solve_solitary_unidirectional(whitham, c, grid);

  // Right-mover lift with l = 0: eta = r, v = sqrt(g/h) K eta.
  RealField eta = seed.profile[0];
  RealField v = apply_multiplier(k_symbol(h), eta) * std::sqrt(g / h);

  // Coupled traveling-wave system: c (eta, v) = L (eta, v) + N(eta, v) with
  // L = [[0, h], [g K^2, 0]] and N = (K^2 (eta v), K^2 (v^2/2)).
  const MultiplierTable k2(k_squared_symbol(h), grid);
  std::vector<double> k2v(static_cast<size_t>(grid.n_modes));
  for (int k = 0; k < grid.n_modes; ++k)
    k2v[static_cast<size_t>(k)] = k2.values()[static_cast<size_t>(k)].real();

  auto residual_of = [&](const RealField& e, const RealField& u) {
    RealField r1 = e * c;
    add_scaled(r1, -h, u);
    r1 -= k2.apply(pointwise(e, u));
    RealField r2 = u * c;
    add_scaled(r2, -g, k2.apply(e));
    RealField half_u2 = pointwise(u, u) * 0.5;
    r2 -= k2.apply(half_u2);
    const double num = std::hypot(l2_norm(r1), l2_norm(r2));
    const double den = c * std::hypot(l2_norm(e), l2_norm(u));
    return num / std::max(den, 1e-300);
  };

  double res = residual_of(eta, v);
  const int max_sweeps = 50;
  for (int sweep = 0; sweep < max_sweeps && res > 1e-12; ++sweep) {
    const RealField n1 = k2.apply(pointwise(eta, v));
    const RealField n2 = k2.apply(pointwise(v, v)) * 0.5;
    // Stabilizer from the L2 pairing of the equation with the iterate.
    const RealField lam1 = v * h;
    const RealField lam2 = k2.apply(eta) * g;
    const double num =
        c * (inner(eta, eta) + inner(v, v)) - inner(lam1, eta) - inner(lam2, v);
    const double den = inner(n1, eta) + inner(n2, v);
    if (den == 0.0) break;
    const double s = num / den;
    // Per-mode inverse of [[c, -h], [-g K^2, c]] applied to s^2 N.
    Spectrum f1 = fft_forward(n1);
    Spectrum f2 = fft_forward(n2);
    for (int k = 0; k < grid.n_modes; ++k) {
      const double det = c * c - g * h * k2v[static_cast<size_t>(k)];
      const auto a = f1[static_cast<size_t>(k)], b = f2[static_cast<size_t>(k)];
      f1[static_cast<size_t>(k)] = (c * a + h * b) * (s * s / det);
      f2[static_cast<size_t>(k)] =
          (g * k2v[static_cast<size_t>(k)] * a + c * b) * (s * s / det);
    }
    eta = fft_inverse(grid, f1);
    v = fft_inverse(grid, f2);
    res = residual_of(eta, v);
  }

  if (res > 1e-5)
    throw SolverError("WB solitary refinement stalled above the acceptance bound", res);

  TravelingWave wave;
  wave.profile = State(std::move(eta), std::move(v));
  wave.speed = c;
  wave.residual = res;
  wave.iterations = max_sweeps;
  wave.above_target = res > 1e-8;
  return wave;
}

namespace {
int path_steps_for(double t, const BrownianPath& path) {
  if (t == 0.0) return 0;
  const double steps = t / path.dt;
  const int n = static_cast<int>(std::llround(steps));
  if (std::fabs(steps - n) > 1e-9 * std::max(1.0, steps))
    throw UsageError("time must align with the Brownian path's step grid");
  if (n > path.n_steps) throw UsageError("Brownian path shorter than requested time");
  return n;
}
}  // namespace

State airy_exact(const State& u0, double t, const BrownianPath& path, double g,
                 double h, const NoiseSpec& noise) {
  if (u0.components() != 2) throw UsageError("airy_exact needs a two-component state");
  const int n = path_steps_for(t, path);
  std::vector<double> totals(static_cast<size_t>(noise.components()), 0.0);
  for (int j = 0; j < noise.components(); ++j)
    totals[static_cast<size_t>(j)] = path.partial_sum(j, n);
  const ModelSpec airy = ModelSpec::airy(g, h);
  return Propagator::duhamel(airy, u0.grid(), t, totals, noise).apply(u0);
}

RealField shifted_deterministic(const RealField& eta_det, const BrownianPath& path,
                                const NoiseSpec& noise, double t) {
  const int n = path_steps_for(t, path);
  double alpha = 0.0;
  for (int j = 0; j < noise.components(); ++j)
    alpha += noise.gammas[static_cast<size_t>(j)] * path.partial_sum(j, n);
  return spatial_shift(eta_det, alpha);
}

double best_shift(const RealField& f, const RealField& ref) {
  const Grid& grid = f.grid();
  const int n = grid.n_modes;
  const Spectrum fs = fft_forward(f);
  const Spectrum rs = fft_forward(ref);

  // Overlap C(alpha) = <f(.+alpha), ref> as a trigonometric polynomial.
  std::vector<std::complex<double>> cross(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    cross[static_cast<size_t>(k)] =
        fs[static_cast<size_t>(k)] * std::conj(rs[static_cast<size_t>(k)]);
  auto overlap = [&](double alpha) {
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
      const double phase = alpha * grid.xi[static_cast<size_t>(k)];
      sum += (cross[static_cast<size_t>(k)] *
              std::complex<double>{std::cos(phase), std::sin(phase)})
                 .real();
    }
    return sum;
  };

  double best_alpha = 0.0, best_val = overlap(0.0);
  for (int j = 1; j < n; ++j) {
    const double alpha = j * grid.dx;
    const double val = overlap(alpha);
    if (val > best_val) {
      best_val = val;
      best_alpha = alpha;
    }
  }
  // Golden-section refinement inside +/- dx around the best grid offset.
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = best_alpha - grid.dx, hi = best_alpha + grid.dx;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double v1 = overlap(x1), v2 = overlap(x2);
  for (int it = 0; it < 60; ++it) {
    if (v1 < v2) {
      lo = x1;
      x1 = x2;
      v1 = v2;
      x2 = lo + phi * (hi - lo);
      v2 = overlap(x2);
    } else {
      hi = x2;
      x2 = x1;
      v2 = v1;
      x1 = hi - phi * (hi - lo);
      v1 = overlap(x1);
    }
  }
  const double alpha = 0.5 * (lo + hi);
  // Map into (-L/2, L/2] for a canonical answer on the circle.
  double wrapped = std::fmod(alpha, grid.length);
  if (wrapped > 0.5 * grid.length) wrapped -= grid.length;
  if (wrapped <= -0.5 * grid.length) wrapped += grid.length;
  return wrapped;
}

}  // namespace stochwave
