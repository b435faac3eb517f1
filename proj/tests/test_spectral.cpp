#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "stochwave/diagnostics.hpp"
#include "stochwave/errors.hpp"
#include "stochwave/fft.hpp"
#include "stochwave/grid.hpp"
#include "stochwave/symbols.hpp"

using namespace stochwave;

namespace {
constexpr double kPi = std::numbers::pi;
// High-precision reference, frozen from an independent evaluation of the
// closed formula.
constexpr double kSqrtTanh1 = 0.8726936208978297;  // K(1) at h = 1
}  // namespace

TEST_CASE("make_grid produces FFT-ordered wavenumbers") {
  const Grid g = make_grid(200.0, 1024);
  CHECK(g.dx == doctest::Approx(200.0 / 1024).epsilon(1e-16));
  CHECK(g.xi[1] == doctest::Approx(2.0 * kPi / 200.0).epsilon(1e-15));
  CHECK(g.x.front() == doctest::Approx(-100.0));

  const Grid small = make_grid(2.0 * kPi, 8);
  const double expected[] = {0, 1, 2, 3, -4, -3, -2, -1};
  for (int k = 0; k < 8; ++k)
    CHECK(small.xi[static_cast<size_t>(k)] == doctest::Approx(expected[k]).epsilon(1e-14));
}

TEST_CASE("make_grid rejects invalid parameters") {
  CHECK_THROWS_AS(make_grid(10.0, 7), ConfigError);   // odd N
  CHECK_THROWS_AS(make_grid(10.0, 2), ConfigError);   // too small
  CHECK_THROWS_AS(make_grid(-1.0, 16), ConfigError);  // bad length
}

TEST_CASE("eval_symbol_k closed form") {
  CHECK(eval_symbol_k(0.0, 1.0) == 1.0);
  CHECK(eval_symbol_k(1.0, 1.0) == doctest::Approx(kSqrtTanh1).epsilon(1e-14));
  CHECK(eval_symbol_k(-1.0, 1.0) == doctest::Approx(kSqrtTanh1).epsilon(1e-14));
  // large-frequency decay (h xi)^{-1/2}
  CHECK(eval_symbol_k(100.0, 1.0) ==
        doctest::Approx(std::sqrt(std::tanh(100.0) / 100.0)).epsilon(1e-14));
  CHECK(eval_symbol_k(100.0, 1.0) == doctest::Approx(0.1).epsilon(1e-12));
  // values stay in (0, 1]
  for (double xi : {1e-9, 0.5, 3.0, 1e4}) {
    const double k = eval_symbol_k(xi, 2.0);
    CHECK(k > 0.0);
    CHECK(k <= 1.0);
  }
  CHECK_THROWS_AS(eval_symbol_k(1.0, -1.0), ConfigError);
}

TEST_CASE("eval_symbol_ka / kb") {
  for (double xi : {0.0, 0.7, -3.0}) CHECK(eval_symbol_ka(xi, 0.0) == 1.0);
  CHECK(eval_symbol_kb(2.0, 1.0 / 3.0) == doctest::Approx(1.0 + 4.0 / 3.0).epsilon(1e-15));
  // a = h^2/3 - 2b with h = 1, b = 1/3 gives a = -1/3
  const double a = 1.0 / 3.0 - 2.0 / 3.0;
  CHECK(eval_symbol_ka(1.0, a) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(eval_symbol_ka(1.0, 0.5), ConfigError);
  CHECK_THROWS_AS(eval_symbol_kb(1.0, -0.1), ConfigError);
}

TEST_CASE("apply_multiplier identity and single modes") {
  const Grid grid = make_grid(2.0 * kPi, 64);
  RealField f(grid);
  for (int i = 0; i < grid.n_modes; ++i) f[i] = std::sin(grid.x[static_cast<size_t>(i)]);

  const RealField same = apply_multiplier(identity_symbol(), f);
  CHECK(l2_norm(same - f) <= 1e-14 * l2_norm(f));

  // d/dx sin = cos
  const RealField df = apply_multiplier(derivative_symbol(), f);
  double err = 0.0;
  for (int i = 0; i < grid.n_modes; ++i)
    err = std::max(err, std::fabs(df[i] - std::cos(grid.x[static_cast<size_t>(i)])));
  CHECK(err <= 1e-12);

  // K scales a single mode by K(1)
  RealField c(grid);
  for (int i = 0; i < grid.n_modes; ++i) c[i] = std::cos(grid.x[static_cast<size_t>(i)]);
  const RealField kc = apply_multiplier(k_symbol(1.0), c);
  err = 0.0;
  for (int i = 0; i < grid.n_modes; ++i)
    err = std::max(err, std::fabs(kc[i] - kSqrtTanh1 * c[i]));
  CHECK(err <= 1e-12);
}

TEST_CASE("parity violation raises InternalError") {
  const Grid grid = make_grid(10.0, 32);
  const RealField f = random_smooth_field(grid, 5);
  // odd *real* symbol: breaks the Hermitian pairing, output is imaginary
  const Symbol odd_real{[](double xi) { return std::complex<double>{xi, 0.0}; },
                        SymbolParity::general};
  CHECK_THROWS_AS(apply_multiplier(odd_real, f), InternalError);
}

TEST_CASE("realness for built-in symbols on random fields") {
  const Grid grid = make_grid(37.0, 128);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const RealField f = random_smooth_field(grid, seed);
    for (const Symbol& sym :
         {identity_symbol(), derivative_symbol(), k_symbol(0.7), k_squared_symbol(1.3),
          k_inverse_symbol(1.0), ka_symbol(-0.4), kb_symbol(0.25), kb_inverse_symbol(2.0),
          g0_symbol(1.0), shift_symbol(1.234)}) {
      CHECK_NOTHROW(apply_multiplier(sym, f));  // fft_inverse checks the residual
    }
  }
}

TEST_CASE("multiplier composition") {
  const Grid grid = make_grid(21.0, 128);
  const RealField f = random_smooth_field(grid, 9);
  const Symbol s1 = k_symbol(1.0);
  const Symbol s2 = derivative_symbol();
  const RealField chained = apply_multiplier(s1, apply_multiplier(s2, f));
  const RealField combined = apply_multiplier(s1 * s2, f);
  CHECK(l2_norm(chained - combined) <= 1e-12 * l2_norm(f));
}

TEST_CASE("spatial_shift") {
  const Grid grid = make_grid(60.0, 256);

  SUBCASE("zero shift is the identity") {
    const RealField f = random_smooth_field(grid, 2);
    CHECK(l2_norm(spatial_shift(f, 0.0) - f) <= 1e-14 * l2_norm(f));
  }

  SUBCASE("grid-aligned shift rotates samples") {
    RealField onehot(grid);
    onehot[17] = 1.0;
    const RealField rotated = spatial_shift(onehot, grid.dx);
    // f(x + dx) moves the spike one index down
    CHECK(rotated[16] == doctest::Approx(1.0).epsilon(1e-12));
    double off = 0.0;
    for (int i = 0; i < grid.n_modes; ++i)
      if (i != 16) off = std::max(off, std::fabs(rotated[i]));
    CHECK(off <= 1e-12);
  }

  SUBCASE("Gaussian relocation matches the analytic oracle") {
    const double sigma = 2.0, alpha = 1.7;
    RealField f(grid);
    for (int i = 0; i < grid.n_modes; ++i) {
      const double x = grid.x[static_cast<size_t>(i)];
      f[i] = std::exp(-x * x / (2.0 * sigma * sigma));
    }
    const RealField shifted = spatial_shift(f, alpha);
    RealField oracle(grid);
    for (int i = 0; i < grid.n_modes; ++i) {
      const double x = grid.x[static_cast<size_t>(i)] + alpha;
      oracle[i] = std::exp(-x * x / (2.0 * sigma * sigma));
    }
    CHECK(l2_norm(shifted - oracle) <= 1e-10 * l2_norm(f));
  }

  SUBCASE("shift additivity") {
    const RealField f = random_smooth_field(grid, 3);
    const RealField two_steps = spatial_shift(spatial_shift(f, 0.8), 2.9);
    const RealField one_step = spatial_shift(f, 3.7);
    CHECK(l2_norm(two_steps - one_step) <= 1e-12 * l2_norm(f));
  }
}

TEST_CASE("Parseval convention") {
  const Grid grid = make_grid(25.0, 64);
  const RealField f = random_smooth_field(grid, 11);
  double phys = 0.0;
  for (int i = 0; i < f.size(); ++i) phys += f[i] * f[i];
  phys *= grid.dx;
  const Spectrum spec = fft_forward(f);
  double spectral = 0.0;
  for (const auto& c : spec) spectral += std::norm(c);
  spectral *= grid.dx * grid.dx / grid.length;
  CHECK(phys == doctest::Approx(spectral).epsilon(1e-12));
}

TEST_CASE("two-thirds dealiasing clears the top band") {
  const Grid grid = make_grid(10.0, 32);
  RealField f = random_smooth_field(grid, 4, 1e6);  // slow spectral decay
  Spectrum spec = fft_forward(f);
  dealias_two_thirds(spec);
  for (int j = 0; j < grid.n_modes; ++j) {
    const int k = (j < 16) ? j : j - 32;
    if (std::abs(k) > 10) CHECK(std::abs(spec[static_cast<size_t>(j)]) == 0.0);
  }
}
