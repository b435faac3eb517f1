#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "stochwave/diagnostics.hpp"
#include "stochwave/errors.hpp"
#include "stochwave/integrators.hpp"
#include "stochwave/symbols.hpp"

using namespace stochwave;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTanh1 = 0.7615941559557649;
}  // namespace

TEST_CASE("xs_norm") {
  const Grid grid = make_grid(2.0 * kPi, 128);
  State zero{RealField(grid), RealField(grid)};
  CHECK(xs_norm(zero, 0.0, 1.0) == 0.0);

  State u = zero;
  for (int i = 0; i < grid.n_modes; ++i)
    u[0][i] = std::cos(grid.x[static_cast<size_t>(i)]);
  // ||cos||_{L^2} = sqrt(pi) on a 2 pi period
  CHECK(xs_norm(u, 0.0, 1.0) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));

  // H^1 weight on a single mode: sqrt(1 + 1) * sqrt(pi)
  CHECK(xs_norm(u, 1.0, 1.0) == doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-12));

  const State scalar{RealField(grid)};
  CHECK_THROWS_AS(xs_norm(scalar, 0.0, 1.0), UsageError);

  // Airy propagator preserves the norm on Nyquist-free random states
  const Grid big = make_grid(150.0, 256);
  const NoiseSpec noise = gammas_from_epsilon(0.1, 1, 1.0, 1.0);
  State r(random_smooth_field(big, 1, 12.0), random_smooth_field(big, 2, 12.0));
  const std::vector<double> dw = {0.21};
  const State moved =
      Propagator::duhamel(ModelSpec::airy(1.0, 1.0), big, 0.7, dw, noise).apply(r);
  for (double s : {0.0, 1.0})
    CHECK(xs_norm(moved, s, 1.0) == doctest::Approx(xs_norm(r, s, 1.0)).epsilon(1e-12));
}

TEST_CASE("BBM H1 drift prediction") {
  const double b = 1.0 / 6.0;  // a = 0 at h = 1
  const ModelSpec bbm = ModelSpec::bbm(1.0, 1.0, b);
  const NoiseSpec noise = gammas_from_epsilon(0.1, 1, 1.0, 1.0);
  const Grid grid = make_grid(2.0 * kPi, 128);

  SUBCASE("even profile gives a vanishing coefficient") {
    RealField r(grid);
    for (int i = 0; i < grid.n_modes; ++i) {
      const double x = grid.x[static_cast<size_t>(i)];
      r[i] = 1.0 / (std::cosh(x) * std::cosh(x));
    }
    const auto coeffs = bbm_h1_drift_prediction(r, bbm, noise);
    CHECK(coeffs.size() == 1);
    CHECK(std::fabs(coeffs[0]) <= 1e-12);
  }

  SUBCASE("asymmetric profile against the quadrature oracle") {
    RealField r(grid);
    for (int i = 0; i < grid.n_modes; ++i) {
      const double x = grid.x[static_cast<size_t>(i)];
      r[i] = std::cos(x) + std::sin(2.0 * x);
    }
    // brute-force quadrature of (r')^3 with the analytic derivative
    double cube = 0.0;
    for (int i = 0; i < grid.n_modes; ++i) {
      const double x = grid.x[static_cast<size_t>(i)];
      const double rx = -std::sin(x) + 2.0 * std::cos(2.0 * x);
      cube += rx * rx * rx;
    }
    cube *= grid.dx;
    CHECK(cube == doctest::Approx(-3.0 * kPi).epsilon(1e-12));  // exact integral
    const double expected = 1.5 * b * noise.gammas[0] * cube;
    const auto coeffs = bbm_h1_drift_prediction(r, bbm, noise);
    CHECK(coeffs[0] == doctest::Approx(expected).epsilon(1e-10));
  }

  SUBCASE("zero noise gives zero coefficients") {
    const NoiseSpec none = gammas_from_epsilon(0.0, 2, 1.0, 1.0);
    RealField r = random_smooth_field(grid, 3);
    for (double cv : bbm_h1_drift_prediction(r, bbm, none)) CHECK(cv == 0.0);
  }

  SUBCASE("wrong configuration is rejected") {
    RealField r = random_smooth_field(grid, 5);
    CHECK_THROWS_AS(bbm_h1_drift_prediction(r, ModelSpec::whitham(1.0, 1.0), noise),
                    UsageError);
    // b = 1/3 puts a = -1/3 != 0
    CHECK_THROWS_AS(bbm_h1_drift_prediction(r, ModelSpec::bbm(1.0, 1.0, 1.0 / 3.0), noise),
                    UsageError);
  }
}

TEST_CASE("BBM H1 functional on a single mode") {
  const Grid grid = make_grid(2.0 * kPi, 128);
  RealField r(grid);
  for (int i = 0; i < grid.n_modes; ++i)
    r[i] = std::cos(grid.x[static_cast<size_t>(i)]);
  // int r K_b r = K_b(1) pi = (1 + 1/3) pi
  CHECK(bbm_h1_functional(r, 1.0 / 3.0) ==
        doctest::Approx(kPi * 4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("one-step H1 increments regress onto the predicted coefficients") {
  const double b = 1.0 / 6.0;
  const ModelSpec bbm = ModelSpec::bbm(1.0, 1.0, b);
  const NoiseSpec noise = gammas_from_epsilon(0.1, 1, 1.0, 1.0);
  const Grid grid = make_grid(2.0 * kPi, 128);
  const ModelOps ops(bbm, grid);

  RealField r0(grid);
  for (int i = 0; i < grid.n_modes; ++i) {
    const double x = grid.x[static_cast<size_t>(i)];
    r0[i] = 0.3 * (std::cos(x) + std::sin(2.0 * x));
  }
  const State u0{r0};
  const double q0 = bbm_h1_functional(r0, b);
  const double coeff = bbm_h1_drift_prediction(r0, bbm, noise)[0];

  const std::vector<double> dts = {1e-3, 5e-4, 2.5e-4};
  std::vector<double> rms;
  const int samples = 64;
  for (double dt : dts) {
    double sq = 0.0;
    for (int s = 0; s < samples; ++s) {
      const BrownianPath path = sample_path(500 + s, 1, dt, 1);
      const State u1 = step_duhamel_milstein(ops, u0, dt, path.step(0), noise);
      const double observed = bbm_h1_functional(u1[0], b) - q0;
      const double predicted = coeff * path.increment(0, 0);
      sq += (observed - predicted) * (observed - predicted);
    }
    rms.push_back(std::sqrt(sq / samples));
  }
  CHECK(fit_loglog_slope(dts, rms) >= 0.8);
}

TEST_CASE("Dirichlet-Neumann operators") {
  const Grid grid = make_grid(2.0 * kPi, 128);

  SUBCASE("G0 on constants and single modes") {
    RealField c(grid, 3.0);
    CHECK(max_abs(dno_g0(c, 1.0)) <= 1e-14);
    RealField cosx(grid);
    for (int i = 0; i < grid.n_modes; ++i)
      cosx[i] = std::cos(grid.x[static_cast<size_t>(i)]);
    const RealField g0 = dno_g0(cosx, 1.0);
    double err = 0.0;
    for (int i = 0; i < grid.n_modes; ++i)
      err = std::max(err, std::fabs(g0[i] - kTanh1 * cosx[i]));
    CHECK(err <= 1e-12);
  }

  SUBCASE("G0 positivity and self-adjointness") {
    const Grid big = make_grid(55.0, 256);
    for (std::uint64_t s = 0; s < 4; ++s) {
      const RealField phi = random_smooth_field(big, s);
      const RealField psi = random_smooth_field(big, s + 50);
      CHECK(inner(phi, dno_g0(phi, 1.0)) >= -1e-14);
      const double lhs = inner(psi, dno_g0(phi, 1.0));
      const double rhs = inner(dno_g0(psi, 1.0), phi);
      CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, std::fabs(lhs)));
    }
  }

  SUBCASE("G1 zero cases and symmetry") {
    const Grid big = make_grid(55.0, 256);
    const RealField zero(big);
    const RealField phi = random_smooth_field(big, 9);
    CHECK(max_abs(dno_g1(zero, phi, 1.0)) <= 1e-14);
    RealField c(big, 2.5);
    const RealField eta = random_smooth_field(big, 10, 8.0, 0.1);
    CHECK(max_abs(dno_g1(eta, c, 1.0)) <= 1e-13);

    const RealField psi = random_smooth_field(big, 11);
    const double lhs = inner(psi, dno_g1(eta, phi, 1.0));
    const double rhs = inner(dno_g1(eta, psi, 1.0), phi);
    const double scale = l2_norm(psi) * l2_norm(phi) * max_abs(eta) + 1e-30;
    CHECK(std::fabs(lhs - rhs) <= 1e-10 * scale);
  }
}

TEST_CASE("truncated full energy") {
  const Grid grid = make_grid(2.0 * kPi, 128);
  CHECK(energy_full_truncated(RealField(grid), RealField(grid), 1.0, 1.0) == 0.0);

  RealField phi(grid);
  for (int i = 0; i < grid.n_modes; ++i)
    phi[i] = std::cos(grid.x[static_cast<size_t>(i)]);
  // eta = 0: (1/2) int Phi G0 Phi = (1/2) tanh(1) pi
  CHECK(energy_full_truncated(RealField(grid), phi, 1.0, 1.0) ==
        doctest::Approx(0.5 * kTanh1 * kPi).epsilon(1e-12));

  SUBCASE("difference from the WB energy is exactly cubic in the amplitude") {
    const Grid big = make_grid(60.0, 256);
    const ModelSpec wb = ModelSpec::whitham_boussinesq(1.0, 1.0);
    const RealField eta0 = random_smooth_field(big, 31, 8.0, 0.1);
    const RealField phi0 = random_smooth_field(big, 32, 8.0, 0.1);
    const Symbol to_v = k_squared_symbol(1.0) * derivative_symbol();

    std::vector<double> scales = {1.0, 0.5, 0.25, 0.125};
    std::vector<double> diffs;
    for (double s : scales) {
      const RealField eta = eta0 * s;
      const RealField phi = phi0 * s;
      const State u(eta, apply_multiplier(to_v, phi));
      const double full = energy_full_truncated(eta, phi, 1.0, 1.0);
      const double wb_energy = energy(wb, u);
      diffs.push_back(std::fabs(full - wb_energy));
    }
    CHECK(fit_loglog_slope(scales, diffs) >= 2.7);
    CHECK(fit_loglog_slope(scales, diffs) == doctest::Approx(3.0).epsilon(0.02));
  }
}

TEST_CASE("observer series serialization") {
  ObserverSeries s;
  s.name = "energy";
  s.times = {0.0, 0.1, 0.2};
  s.values = {1.0, 1.0000001, 0.123456789012345678};
  s.metadata["model"] = "whitham-boussinesq";
  s.metadata["seed"] = "42";

  std::ostringstream csv;
  write_series_csv(s, csv);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,energy");
  std::getline(in, line);
  std::getline(in, line);
  std::getline(in, line);  // third row
  const auto comma = line.find(',');
  // 17 significant digits round-trip exactly
  CHECK(std::stod(line.substr(comma + 1)) == 0.123456789012345678);

  std::ostringstream meta;
  write_series_metadata_json(s, meta);
  CHECK(meta.str().find("\"model\": \"whitham-boussinesq\"") != std::string::npos);
}

TEST_CASE("fit_loglog_slope sanity") {
  std::vector<double> x = {1.0, 0.5, 0.25, 0.125};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * v * v);
  CHECK(fit_loglog_slope(x, y) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_loglog_slope({1.0}, {2.0}), UsageError);
}

TEST_CASE("conserved functional delegates to the catalogue energy") {
  const Grid grid = make_grid(40.0, 128);
  const ModelSpec whit = ModelSpec::whitham(1.0, 1.0);
  const State u(random_smooth_field(grid, 77, 8.0, 0.2));
  CHECK(conserved_functional(whit, u) == energy(whit, u));
}
