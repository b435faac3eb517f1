#include "stochwave/models.hpp"

#include <cmath>

#include "stochwave/errors.hpp"
#include "stochwave/fft.hpp"

namespace stochwave {

std::string model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::airy: return "airy";
    case ModelKind::whitham_boussinesq: return "whitham-boussinesq";
    case ModelKind::boussinesq: return "boussinesq";
    case ModelKind::bbm: return "bbm";
    case ModelKind::modified_bbm: return "modified-bbm";
    case ModelKind::fd_unidirectional: return "fd-unidirectional";
    case ModelKind::whitham: return "whitham";
  }
  throw UsageError("unknown model kind");
}

ModelKind model_from_name(const std::string& name) {
  for (ModelKind k : {ModelKind::airy, ModelKind::whitham_boussinesq,
                      ModelKind::boussinesq, ModelKind::bbm, ModelKind::modified_bbm,
                      ModelKind::fd_unidirectional, ModelKind::whitham})
    if (model_name(k) == name) return k;
  throw ConfigError("unknown model name: " + name);
}

int ModelSpec::components() const {
  switch (kind) {
    case ModelKind::airy:
    case ModelKind::whitham_boussinesq:
    case ModelKind::boussinesq:
      return 2;
    default:
      return 1;
  }
}

bool ModelSpec::has_b_parameter() const {
  return kind == ModelKind::boussinesq || kind == ModelKind::bbm ||
         kind == ModelKind::modified_bbm;
}

namespace {
ModelSpec make_spec(ModelKind kind, double g, double h, double b) {
  if (g <= 0.0 || h <= 0.0) throw ConfigError("g and h must be positive");
  ModelSpec m;
  m.kind = kind;
  m.gravity = g;
  m.depth = h;
  m.b = b;
  if (m.has_b_parameter()) {
    if (b < h * h / 6.0)
      throw ConfigError("b must be >= h^2/6 so that a = h^2/3 - 2b <= 0");
  }
  return m;
}
}  // namespace

ModelSpec ModelSpec::airy(double g, double h) { return make_spec(ModelKind::airy, g, h, 0.0); }
ModelSpec ModelSpec::whitham_boussinesq(double g, double h) {
  return make_spec(ModelKind::whitham_boussinesq, g, h, 0.0);
}
ModelSpec ModelSpec::boussinesq(double g, double h, double b) {
  return make_spec(ModelKind::boussinesq, g, h, b);
}
ModelSpec ModelSpec::bbm(double g, double h, double b) {
  return make_spec(ModelKind::bbm, g, h, b);
}
ModelSpec ModelSpec::modified_bbm(double g, double h, double b) {
  return make_spec(ModelKind::modified_bbm, g, h, b);
}
ModelSpec ModelSpec::fd_unidirectional(double g, double h) {
  return make_spec(ModelKind::fd_unidirectional, g, h, 0.0);
}
ModelSpec ModelSpec::whitham(double g, double h) {
  return make_spec(ModelKind::whitham, g, h, 0.0);
}

State State::zero(const ModelSpec& model, const Grid& grid) {
  State u;
  for (int c = 0; c < model.components(); ++c) u.comps.emplace_back(grid);
  return u;
}

State& State::operator+=(const State& other) {
  for (size_t c = 0; c < comps.size(); ++c) comps[c] += other.comps[c];
  return *this;
}
State& State::operator-=(const State& other) {
  for (size_t c = 0; c < comps.size(); ++c) comps[c] -= other.comps[c];
  return *this;
}
State& State::operator*=(double s) {
  for (auto& c : comps) c *= s;
  return *this;
}

bool State::all_finite() const {
  for (const auto& c : comps)
    for (double v : c.samples())
      if (!std::isfinite(v)) return false;
  return true;
}

void add_scaled(State& y, double alpha, const State& x) {
  for (size_t c = 0; c < y.comps.size(); ++c)
    add_scaled(y.comps[c], alpha, x.comps[c]);
}

double l2_norm(const State& u) {
  double s = 0.0;
  for (const auto& c : u.comps) {
    const double n = l2_norm(c);
    s += n * n;
  }
  return std::sqrt(s);
}

double inner(const State& a, const State& b) {
  double s = 0.0;
  for (size_t c = 0; c < a.comps.size(); ++c) s += inner(a.comps[c], b.comps[c]);
  return s;
}

Mat2c linear_drift_matrix(const ModelSpec& model, double xi) {
  const double g = model.gravity, h = model.depth;
  const std::complex<double> ixi{0.0, xi};
  switch (model.kind) {
    case ModelKind::airy:
    case ModelKind::whitham_boussinesq: {
      const double k = eval_symbol_k(xi, h);
      return {0.0, -h * ixi, -g * k * k * ixi, 0.0};
    }
    case ModelKind::boussinesq: {
      const double ka = eval_symbol_ka(xi, model.a());
      const double kb_inv = 1.0 / eval_symbol_kb(xi, model.b);
      return {0.0, -h * ka * kb_inv * ixi, -g * kb_inv * ixi, 0.0};
    }
    default:
      throw UsageError("linear_drift_matrix requires a two-component model");
  }
}

std::complex<double> linear_drift_scalar(const ModelSpec& model, double xi) {
  const double g = model.gravity, h = model.depth;
  const std::complex<double> ixi{0.0, xi};
  switch (model.kind) {
    case ModelKind::bbm: {
      const double ka = eval_symbol_ka(xi, model.a());
      const double kb = eval_symbol_kb(xi, model.b);
      return -std::sqrt(g * h * ka) / kb * ixi;
    }
    case ModelKind::modified_bbm: {
      const double ka = eval_symbol_ka(xi, model.a());
      const double kb = eval_symbol_kb(xi, model.b);
      return -std::sqrt(g * h) * std::sqrt(ka) / kb * ixi;
    }
    case ModelKind::fd_unidirectional:
    case ModelKind::whitham:
      return -std::sqrt(g * h) * eval_symbol_k(xi, h) * ixi;
    default:
      throw UsageError("linear_drift_scalar requires a one-component model");
  }
}

std::complex<double> noise_symbol(double xi, double gamma) {
  return {0.0, xi * gamma};
}

// --- ModelOps ---------------------------------------------------------------

ModelOps::ModelOps(const ModelSpec& model, const Grid& grid, ModelOpsOptions opts)
    : model_(model), grid_(&grid), opts_(opts) {
  const double g = model.gravity, h = model.depth;
  const Symbol deriv = derivative_symbol();
  deriv_ = MultiplierTable(deriv, grid);
  switch (model.kind) {
    case ModelKind::airy:
    case ModelKind::whitham_boussinesq:
      k2_deriv_ = MultiplierTable(k_squared_symbol(h) * deriv, grid);
      kinv_ = MultiplierTable(k_inverse_symbol(h), grid);
      kinv2_ = MultiplierTable(k_inverse_symbol(h) * k_inverse_symbol(h), grid);
      k_ = MultiplierTable(k_symbol(h), grid);
      break;
    case ModelKind::boussinesq:
      kbinv_deriv_ = MultiplierTable(kb_inverse_symbol(model.b) * deriv, grid);
      kainv_deriv_ = MultiplierTable(
          Symbol{[a = model.a()](double xi) {
                   return std::complex<double>{1.0 / eval_symbol_ka(xi, a), 0.0};
                 },
                 SymbolParity::even_real} *
              deriv,
          grid);
      ka_kbinv_deriv_ =
          MultiplierTable(ka_symbol(model.a()) * kb_inverse_symbol(model.b) * deriv, grid);
      ka_ = MultiplierTable(ka_symbol(model.a()), grid);
      break;
    case ModelKind::bbm:
      lin_deriv_ = MultiplierTable(
          Symbol{[g, h, a = model.a(), b = model.b](double xi) {
                   return std::complex<double>{
                       std::sqrt(g * h * eval_symbol_ka(xi, a)) / eval_symbol_kb(xi, b), 0.0};
                 },
                 SymbolParity::even_real} *
              deriv,
          grid);
      f_deriv_ = lin_deriv_;
      g_deriv_ = deriv_;
      break;
    case ModelKind::modified_bbm: {
      const Symbol root_ka{[a = model.a()](double xi) {
                             return std::complex<double>{
                                 std::sqrt(eval_symbol_ka(xi, a)), 0.0};
                           },
                           SymbolParity::even_real};
      const Symbol kb_inv = kb_inverse_symbol(model.b);
      const Symbol sqrt_gh{[g, h](double) {
                             return std::complex<double>{std::sqrt(g * h), 0.0};
                           },
                           SymbolParity::even_real};
      lin_deriv_ = MultiplierTable(sqrt_gh * root_ka * kb_inv * deriv, grid);
      f_deriv_ = MultiplierTable(sqrt_gh * root_ka * root_ka * kb_inv * kb_inv * deriv, grid);
      g_deriv_ = MultiplierTable(root_ka * kb_inv * deriv, grid);
      q_weight_ = MultiplierTable(
          Symbol{[a = model.a(), b = model.b](double xi) {
                   return std::complex<double>{
                       eval_symbol_kb(xi, b) / std::sqrt(eval_symbol_ka(xi, a)), 0.0};
                 },
                 SymbolParity::even_real},
          grid);
      break;
    }
    case ModelKind::fd_unidirectional:
      lin_deriv_ = MultiplierTable(
          Symbol{[g, h](double xi) {
                   return std::complex<double>{std::sqrt(g * h) * eval_symbol_k(xi, h), 0.0};
                 },
                 SymbolParity::even_real} *
              deriv,
          grid);
      f_deriv_ = lin_deriv_;
      g_deriv_ = deriv_;
      break;
    case ModelKind::whitham:
      lin_deriv_ = MultiplierTable(
          Symbol{[g, h](double xi) {
                   return std::complex<double>{std::sqrt(g * h) * eval_symbol_k(xi, h), 0.0};
                 },
                 SymbolParity::even_real} *
              deriv,
          grid);
      f_deriv_ = MultiplierTable(
          Symbol{[g, h](double) { return std::complex<double>{std::sqrt(g * h), 0.0}; },
                 SymbolParity::even_real} *
              deriv,
          grid);
      g_deriv_ = MultiplierTable(k_inverse_symbol(h) * deriv, grid);
      q_weight_ = MultiplierTable(k_symbol(h), grid);
      break;
  }
}

RealField ModelOps::product(const RealField& a, const RealField& b) const {
  RealField p = pointwise(a, b);
  if (opts_.dealias) {
    Spectrum spec = fft_forward(p);
    dealias_two_thirds(spec);
    p = fft_inverse(*grid_, spec);
  }
  return p;
}

void ModelOps::check_components(const State& u) const {
  if (u.components() != model_.components())
    throw UsageError("state has " + std::to_string(u.components()) +
                     " components, model " + model_name(model_.kind) + " needs " +
                     std::to_string(model_.components()));
}

State ModelOps::drift_nonlinearity(const State& u) const {
  check_components(u);
  const double h = model_.depth;
  switch (model_.kind) {
    case ModelKind::airy:
      return State::zero(model_, *grid_);
    case ModelKind::whitham_boussinesq: {
      // f = -(K^2 dx (eta v), K^2 dx (v^2/2))
      RealField f1 = k2_deriv_.apply(product(u[0], u[1])) * -1.0;
      RealField f2 = k2_deriv_.apply(product(u[1], u[1])) * -0.5;
      return State(std::move(f1), std::move(f2));
    }
    case ModelKind::boussinesq: {
      // f = -(dx K_b^{-1} (eta w), dx K_b^{-1} (w^2/2))
      RealField f1 = kbinv_deriv_.apply(product(u[0], u[1])) * -1.0;
      RealField f2 = kbinv_deriv_.apply(product(u[1], u[1])) * -0.5;
      return State(std::move(f1), std::move(f2));
    }
    default: {
      // f = -(3/4h) M dx (r^2), M the model's drift multiplier
      RealField f = f_deriv_.apply(product(u[0], u[0])) * (-0.75 / h);
      return State(std::move(f));
    }
  }
}

State ModelOps::noise_nonlinearity(const State& u) const {
  check_components(u);
  if (opts_.linear_noise_only || model_.kind == ModelKind::airy)
    return State::zero(model_, *grid_);
  const double g = model_.gravity, h = model_.depth;
  switch (model_.kind) {
    case ModelKind::whitham_boussinesq: {
      // g(u) = (g^{-1} dx (v^2/2), h^{-1} K^2 dx (eta v))
      RealField g1 = deriv_.apply(product(u[1], u[1])) * (0.5 / g);
      RealField g2 = k2_deriv_.apply(product(u[0], u[1])) * (1.0 / h);
      return State(std::move(g1), std::move(g2));
    }
    case ModelKind::boussinesq: {
      // g(u) = (g^{-1} dx (w^2/2), h^{-1} K_a^{-1} dx (eta w))
      RealField g1 = deriv_.apply(product(u[1], u[1])) * (0.5 / g);
      RealField g2 = kainv_deriv_.apply(product(u[0], u[1])) * (1.0 / h);
      return State(std::move(g1), std::move(g2));
    }
    default: {
      // g(u) = (3/4h) M dx (r^2), M the model's noise multiplier
      RealField gr = g_deriv_.apply(product(u[0], u[0])) * (0.75 / h);
      return State(std::move(gr));
    }
  }
}

State ModelOps::noise_nonlinearity_derivative(const State& u, const State& w) const {
  check_components(u);
  check_components(w);
  if (opts_.linear_noise_only || model_.kind == ModelKind::airy)
    return State::zero(model_, *grid_);
  const double g = model_.gravity, h = model_.depth;
  switch (model_.kind) {
    case ModelKind::whitham_boussinesq: {
      RealField d1 = deriv_.apply(product(u[1], w[1])) * (1.0 / g);
      RealField mixed = product(u[0], w[1]);
      mixed += product(w[0], u[1]);
      RealField d2 = k2_deriv_.apply(mixed) * (1.0 / h);
      return State(std::move(d1), std::move(d2));
    }
    case ModelKind::boussinesq: {
      RealField d1 = deriv_.apply(product(u[1], w[1])) * (1.0 / g);
      RealField mixed = product(u[0], w[1]);
      mixed += product(w[0], u[1]);
      RealField d2 = kainv_deriv_.apply(mixed) * (1.0 / h);
      return State(std::move(d1), std::move(d2));
    }
    default: {
      RealField d = g_deriv_.apply(product(u[0], w[0])) * (1.5 / h);
      return State(std::move(d));
    }
  }
}

State ModelOps::gprime_g(const State& u) const {
  return noise_nonlinearity_derivative(u, noise_nonlinearity(u));
}

State ModelOps::ito_corrected_drift(const State& u, const NoiseSpec& noise) const {
  State out = drift_nonlinearity(u);
  const double half_sum = 0.5 * noise.sum_gamma_sq();
  if (half_sum == 0.0 || opts_.linear_noise_only || model_.kind == ModelKind::airy)
    return out;
  const State g = noise_nonlinearity(u);
  add_scaled(out, 2.0 * half_sum, spatial_derivative(g));
  add_scaled(out, half_sum, noise_nonlinearity_derivative(u, g));
  return out;
}

State ModelOps::duhamel_nonlinearity(const State& u, const NoiseSpec& noise) const {
  State out = drift_nonlinearity(u);
  const double half_sum = 0.5 * noise.sum_gamma_sq();
  if (half_sum == 0.0 || opts_.linear_noise_only || model_.kind == ModelKind::airy)
    return out;
  add_scaled(out, half_sum, gprime_g(u));
  return out;
}

State ModelOps::linear_drift(const State& u) const {
  check_components(u);
  const double g = model_.gravity, h = model_.depth;
  switch (model_.kind) {
    case ModelKind::airy:
    case ModelKind::whitham_boussinesq: {
      RealField d1 = deriv_.apply(u[1]) * -h;
      RealField d2 = k2_deriv_.apply(u[0]) * -g;
      return State(std::move(d1), std::move(d2));
    }
    case ModelKind::boussinesq: {
      RealField d1 = ka_kbinv_deriv_.apply(u[1]) * -h;
      RealField d2 = kbinv_deriv_.apply(u[0]) * -g;
      return State(std::move(d1), std::move(d2));
    }
    default:
      return State(lin_deriv_.apply(u[0]) * -1.0);
  }
}

State ModelOps::spatial_derivative(const State& u) const {
  State out;
  for (const auto& c : u.comps) out.comps.push_back(deriv_.apply(c));
  return out;
}

double ModelOps::energy(const State& u) const {
  check_components(u);
  const double g = model_.gravity, h = model_.depth;
  const double dx = grid_->dx;
  auto cubic = [dx](const RealField& r) {
    double s = 0.0;
    for (int i = 0; i < r.size(); ++i) s += r[i] * r[i] * r[i];
    return s * dx;
  };
  switch (model_.kind) {
    case ModelKind::airy: {
      const RealField kinv_v = kinv_.apply(u[1]);
      return 0.5 * (g * inner(u[0], u[0]) + h * inner(kinv_v, kinv_v));
    }
    case ModelKind::whitham_boussinesq: {
      const RealField kinv_v = kinv_.apply(u[1]);
      return 0.5 * (g * inner(u[0], u[0]) + h * inner(kinv_v, kinv_v) +
                    inner(u[0], pointwise(u[1], u[1])));
    }
    case ModelKind::boussinesq:
      return 0.5 * (g * inner(u[0], u[0]) + h * inner(u[1], ka_.apply(u[1])) +
                    inner(u[0], pointwise(u[1], u[1])));
    case ModelKind::bbm:
    case ModelKind::fd_unidirectional:
      return g * (inner(u[0], u[0]) + cubic(u[0]) / (2.0 * h));
    case ModelKind::modified_bbm:
    case ModelKind::whitham:
      return g * (inner(u[0], q_weight_.apply(u[0])) + cubic(u[0]) / (2.0 * h));
  }
  throw UsageError("unknown model kind");
}

State ModelOps::energy_gradient(const State& u) const {
  check_components(u);
  const double g = model_.gravity, h = model_.depth;
  switch (model_.kind) {
    case ModelKind::airy: {
      RealField d1 = u[0] * g;
      RealField d2 = kinv2_.apply(u[1]) * h;
      return State(std::move(d1), std::move(d2));
    }
    case ModelKind::whitham_boussinesq: {
      RealField d1 = u[0] * g;
      add_scaled(d1, 0.5, pointwise(u[1], u[1]));
      RealField d2 = kinv2_.apply(u[1]) * h;
      d2 += pointwise(u[0], u[1]);
      return State(std::move(d1), std::move(d2));
    }
    case ModelKind::boussinesq: {
      RealField d1 = u[0] * g;
      add_scaled(d1, 0.5, pointwise(u[1], u[1]));
      RealField d2 = ka_.apply(u[1]) * h;
      d2 += pointwise(u[0], u[1]);
      return State(std::move(d1), std::move(d2));
    }
    case ModelKind::bbm:
    case ModelKind::fd_unidirectional: {
      RealField d = u[0] * (2.0 * g);
      add_scaled(d, 1.5 * g / h, pointwise(u[0], u[0]));
      return State(std::move(d));
    }
    case ModelKind::modified_bbm:
    case ModelKind::whitham: {
      RealField d = q_weight_.apply(u[0]) * (2.0 * g);
      add_scaled(d, 1.5 * g / h, pointwise(u[0], u[0]));
      return State(std::move(d));
    }
  }
  throw UsageError("unknown model kind");
}

State ModelOps::apply_j(const State& s) const {
  check_components(s);
  const double g = model_.gravity;
  switch (model_.kind) {
    case ModelKind::airy:
    case ModelKind::whitham_boussinesq: {
      RealField j1 = k2_deriv_.apply(s[1]) * -1.0;
      RealField j2 = k2_deriv_.apply(s[0]) * -1.0;
      return State(std::move(j1), std::move(j2));
    }
    case ModelKind::boussinesq: {
      RealField j1 = kbinv_deriv_.apply(s[1]) * -1.0;
      RealField j2 = kbinv_deriv_.apply(s[0]) * -1.0;
      return State(std::move(j1), std::move(j2));
    }
    case ModelKind::bbm:
    case ModelKind::fd_unidirectional:
      // J = -(1/2g) times the linear multiplier with its derivative
      return State(lin_deriv_.apply(s[0]) * (-0.5 / g));
    case ModelKind::modified_bbm:
    case ModelKind::whitham:
      return State(f_deriv_.apply(s[0]) * (-0.5 / g));
  }
  throw UsageError("unknown model kind");
}

State ModelOps::apply_jj(const State& s) const {
  check_components(s);
  const double g = model_.gravity, h = model_.depth;
  switch (model_.kind) {
    case ModelKind::airy:
    case ModelKind::whitham_boussinesq: {
      RealField j1 = deriv_.apply(s[0]) * (1.0 / g);
      RealField j2 = k2_deriv_.apply(s[1]) * (1.0 / h);
      return State(std::move(j1), std::move(j2));
    }
    case ModelKind::boussinesq: {
      RealField j1 = deriv_.apply(s[0]) * (1.0 / g);
      RealField j2 = kainv_deriv_.apply(s[1]) * (1.0 / h);
      return State(std::move(j1), std::move(j2));
    }
    default:
      return State(g_deriv_.apply(s[0]) * (0.5 / g));
  }
}

State drift_nonlinearity(const ModelSpec& model, const State& u) {
  return ModelOps(model, u.grid()).drift_nonlinearity(u);
}
State noise_nonlinearity(const ModelSpec& model, const State& u) {
  return ModelOps(model, u.grid()).noise_nonlinearity(u);
}
State ito_corrected_drift(const ModelSpec& model, const State& u, const NoiseSpec& noise) {
  return ModelOps(model, u.grid()).ito_corrected_drift(u, noise);
}
State duhamel_nonlinearity(const ModelSpec& model, const State& u, const NoiseSpec& noise) {
  return ModelOps(model, u.grid()).duhamel_nonlinearity(u, noise);
}
double energy(const ModelSpec& model, const State& u) {
  return ModelOps(model, u.grid()).energy(u);
}

}  // namespace stochwave
