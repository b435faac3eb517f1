#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "stochwave/grid.hpp"
#include "stochwave/noise.hpp"
#include "stochwave/symbols.hpp"

namespace stochwave {

// The model catalogue. Every model is a Stratonovich system
//   du = (A u + f(u)) dt + sum_j (B_j u + gamma_j g(u)) o dW_j
// with B_j = gamma_j * d/dx acting on each component.
enum class ModelKind {
  airy,                // linear (eta, v) system, f = g = 0
  whitham_boussinesq,  // fully dispersive (eta, v)
  boussinesq,          // one-parameter (eta, w) family, b >= h^2/6
  bbm,                 // unidirectional r, b-parameterized
  modified_bbm,        // unidirectional r conserving the Q functional
  fd_unidirectional,   // fully dispersive unidirectional r
  whitham,             // unidirectional r conserving the Whitham Q
};

std::string model_name(ModelKind kind);
ModelKind model_from_name(const std::string& name);

struct ModelSpec {
  ModelKind kind = ModelKind::airy;
  double gravity = 1.0;  // g (m/s^2)
  double depth = 1.0;    // h (m)
  double b = 0.0;        // dispersion parameter (m^2), b-family models only

  // a = h^2/3 - 2b <= 0 for the b-family models.
  double a() const { return depth * depth / 3.0 - 2.0 * b; }
  int components() const;
  bool has_b_parameter() const;

  static ModelSpec airy(double g, double h);
  static ModelSpec whitham_boussinesq(double g, double h);
  static ModelSpec boussinesq(double g, double h, double b);
  static ModelSpec bbm(double g, double h, double b);
  static ModelSpec modified_bbm(double g, double h, double b);
  static ModelSpec fd_unidirectional(double g, double h);
  static ModelSpec whitham(double g, double h);
};

// One- or two-component real field vector sharing a single grid:
// (eta, v), (eta, w) or r depending on the model.
struct State {
  std::vector<RealField> comps;

  State() = default;
  explicit State(RealField single) { comps.push_back(std::move(single)); }
  State(RealField first, RealField second) {
    comps.push_back(std::move(first));
    comps.push_back(std::move(second));
  }
  static State zero(const ModelSpec& model, const Grid& grid);

  int components() const { return static_cast<int>(comps.size()); }
  const Grid& grid() const { return comps.front().grid(); }
  RealField& operator[](int i) { return comps[static_cast<size_t>(i)]; }
  const RealField& operator[](int i) const { return comps[static_cast<size_t>(i)]; }

  State& operator+=(const State& other);
  State& operator-=(const State& other);
  State& operator*=(double s);
  friend State operator+(State a, const State& b) { return a += b; }
  friend State operator-(State a, const State& b) { return a -= b; }
  friend State operator*(State a, double s) { return a *= s; }

  bool all_finite() const;
};

void add_scaled(State& y, double alpha, const State& x);
double l2_norm(const State& u);                 // sqrt(sum_c ||u_c||^2)
double inner(const State& a, const State& b);   // sum_c <a_c, b_c>

// --- per-mode linear symbols ----------------------------------------------

// Row-major 2x2 complex matrix {a11, a12, a21, a22}.
using Mat2c = std::array<std::complex<double>, 4>;

// A(xi) for the two-component models:
//   Airy/WB:    [[0, -i h xi], [-i g xi K^2, 0]]
//   Boussinesq: -i xi / K_b * [[0, h K_a], [g, 0]]
Mat2c linear_drift_matrix(const ModelSpec& model, double xi);

// A(xi) for the scalar models:
//   BBM:          -i xi sqrt(g h K_a) / K_b
//   ModifiedBBM:  -i xi sqrt(g h) sqrt(K_a) / K_b
//   FDUni/Whitham: -i xi sqrt(g h) K
std::complex<double> linear_drift_scalar(const ModelSpec& model, double xi);

// B_j(xi) = i xi gamma, identical on every component of every model.
std::complex<double> noise_symbol(double xi, double gamma);

// --- model operations -------------------------------------------------------

struct ModelOpsOptions {
  bool dealias = false;            // 2/3-rule on pointwise products
  bool linear_noise_only = false;  // force g(u) = 0, keeping B_j u
};

// Precomputed multiplier tables and nonlinearity assembly for one
// (model, grid) pair. All methods are pure with respect to the state.
class ModelOps {
 public:
  ModelOps(const ModelSpec& model, const Grid& grid, ModelOpsOptions opts = {});

  const ModelSpec& model() const { return model_; }
  const Grid& grid() const { return *grid_; }
  const ModelOpsOptions& options() const { return opts_; }

  // f(u), the Stratonovich drift nonlinearity.
  State drift_nonlinearity(const State& u) const;

  // g(u), the noise nonlinearity (per unit gamma).
  State noise_nonlinearity(const State& u) const;

  // Directional derivative g'(u) w.
  State noise_nonlinearity_derivative(const State& u, const State& w) const;

  // g'(u) g(u).
  State gprime_g(const State& u) const;

  // Ito-corrected drift F(u) = f(u) + (1/2) sum_j gamma_j^2 (2 dx g(u) + g'(u) g(u)).
  State ito_corrected_drift(const State& u, const NoiseSpec& noise) const;

  // Duhamel nonlinearity f~(u) = f(u) + (1/2) sum_j gamma_j^2 g'(u) g(u).
  State duhamel_nonlinearity(const State& u, const NoiseSpec& noise) const;

  // A u.
  State linear_drift(const State& u) const;

  // d/dx applied to every component (B_j u per unit gamma).
  State spatial_derivative(const State& u) const;

  // The model's conserved functional: H for Airy/WB/Boussinesq/BBM/FDUni,
  // Q for ModifiedBBM and Whitham. Plain grid-sum quadrature.
  double energy(const State& u) const;

  // Variational gradient of energy().
  State energy_gradient(const State& u) const;

  // Hamiltonian structure maps: deterministic J and noise J_j (per unit
  // gamma), so that A u + f(u) = J grad H(u) and
  // B_j u + gamma_j g(u) = gamma_j Jj grad H(u).
  State apply_j(const State& s) const;
  State apply_jj(const State& s) const;

 private:
  RealField product(const RealField& a, const RealField& b) const;
  void check_components(const State& u) const;

  ModelSpec model_;
  const Grid* grid_;
  ModelOpsOptions opts_;

  // Multiplier tables; which are populated depends on the model kind.
  MultiplierTable deriv_;          // i xi
  MultiplierTable k2_deriv_;       // i xi K^2
  MultiplierTable kinv_;           // 1/K
  MultiplierTable kinv2_;          // 1/K^2
  MultiplierTable k_;              // K
  MultiplierTable ka_;             // K_a
  MultiplierTable kbinv_deriv_;    // i xi / K_b
  MultiplierTable kainv_deriv_;    // i xi / K_a
  MultiplierTable ka_kbinv_deriv_; // i xi K_a / K_b
  MultiplierTable lin_deriv_;      // i xi times the scalar linear symbol / (-1)
  MultiplierTable f_deriv_;        // i xi times the scalar drift-nonlinearity multiplier
  MultiplierTable g_deriv_;        // i xi times the scalar noise-nonlinearity multiplier
  MultiplierTable q_weight_;       // K_a^{-1/2} K_b (ModifiedBBM) or K (Whitham)
};

// Convenience wrappers matching the catalogue operations one-to-one; these
// construct the table set per call, so prefer ModelOps in loops.
State drift_nonlinearity(const ModelSpec& model, const State& u);
State noise_nonlinearity(const ModelSpec& model, const State& u);
State ito_corrected_drift(const ModelSpec& model, const State& u, const NoiseSpec& noise);
State duhamel_nonlinearity(const ModelSpec& model, const State& u, const NoiseSpec& noise);
double energy(const ModelSpec& model, const State& u);

}  // namespace stochwave
