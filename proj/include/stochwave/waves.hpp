#pragma once

#include "stochwave/grid.hpp"
#include "stochwave/integrators.hpp"
#include "stochwave/models.hpp"
#include "stochwave/noise.hpp"

namespace stochwave {

// A traveling-wave profile together with its speed and the relative residual
// of the traveling-wave equation it satisfies.
struct TravelingWave {
  State profile;
  double speed = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool above_target = false;  // residual accepted but above the 1e-8 target
};

// Solitary wave r(x - ct) of a unidirectional model (BBM, ModifiedBBM,
// FDUnidirectional, Whitham), solving c r = L r + (3/4h) M r^2 in spectral
// form by Petviashvili iteration with stabilizing exponent 2.
// Requires supercritical speed c > sqrt(g h). A warm-start guess may be
// supplied; the default seed is a KdV-informed Gaussian at the origin.
TravelingWave solve_solitary_unidirectional(const ModelSpec& model, double c,
                                            const Grid& grid,
                                            const RealField* guess = nullptr);

// Whitham-Boussinesq solitary seed: lift the Whitham unidirectional solitary
// through the right-mover relation (eta = r, v = sqrt(g/h) K eta), then
// refine on the coupled WB traveling-wave system. The reported residual is
// the coupled system's; above 1e-5 the seed is rejected.
TravelingWave solitary_seed_wb(double c, const Grid& grid, double g, double h);

// Exact solution of the linear (Airy) stochastic system: one application of
// the Duhamel propagator with the path's total increments over [0, t].
State airy_exact(const State& u0, double t, const BrownianPath& path, double g,
                 double h, const NoiseSpec& noise);

// The random-shift solution: the deterministic wave spatially shifted by
// sum_j gamma_j (W_j(t) - W_j(0)).
RealField shifted_deterministic(const RealField& eta_det, const BrownianPath& path,
                                const NoiseSpec& noise, double t);

// Shift alpha maximizing the overlap of f(. + alpha) with ref: coarse search
// over grid offsets via cross-correlation, then a golden-section refinement.
double best_shift(const RealField& f, const RealField& ref);

}  // namespace stochwave
