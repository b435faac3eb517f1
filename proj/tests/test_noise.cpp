#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "stochwave/errors.hpp"
#include "stochwave/noise.hpp"

using namespace stochwave;

TEST_CASE("gammas_from_epsilon equal-amplitude split") {
  const NoiseSpec one = gammas_from_epsilon(0.1, 1, 1.0, 1.0);
  CHECK(one.gammas.size() == 1);
  CHECK(one.gammas[0] == doctest::Approx(0.4472135954999579).epsilon(1e-15));

  const NoiseSpec four = gammas_from_epsilon(0.1, 4, 1.0, 1.0);
  for (double g : four.gammas)
    CHECK(g == doctest::Approx(0.4472135954999579 / 2.0).epsilon(1e-15));

  // the defining relation holds as constructed
  for (const NoiseSpec& spec : {one, four})
    CHECK(0.5 * spec.sum_gamma_sq() == doctest::Approx(0.1).epsilon(1e-14));

  // dimensional factor sqrt(g h^3)
  const NoiseSpec dim = gammas_from_epsilon(0.2, 1, 9.81, 2.0);
  CHECK(0.5 * dim.sum_gamma_sq() ==
        doctest::Approx(std::sqrt(9.81 * 8.0) * 0.2).epsilon(1e-14));

  const NoiseSpec zero = gammas_from_epsilon(0.0, 3, 1.0, 1.0);
  for (double g : zero.gammas) CHECK(g == 0.0);

  CHECK_THROWS_AS(gammas_from_epsilon(-0.1, 1, 1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(gammas_from_epsilon(0.1, 0, 1.0, 1.0), ConfigError);
}

TEST_CASE("sample_path determinism and stream independence") {
  const BrownianPath p1 = sample_path(42, 1000, 1e-3, 2);
  const BrownianPath p2 = sample_path(42, 1000, 1e-3, 2);
  CHECK(p1.increments == p2.increments);  // bit-for-bit

  const BrownianPath p3 = sample_path(43, 1000, 1e-3, 2);
  CHECK(p1.increments != p3.increments);

  // sample correlation between component streams
  const int n = 100000;
  const BrownianPath p = sample_path(7, n, 1.0, 2);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxy += p.increment(i, 0) * p.increment(i, 1);
    sxx += p.increment(i, 0) * p.increment(i, 0);
    syy += p.increment(i, 1) * p.increment(i, 1);
  }
  CHECK(std::fabs(sxy / std::sqrt(sxx * syy)) < 0.01);
}

TEST_CASE("increment moments") {
  const int n = 1000000;
  const double dt = 0.25;
  const BrownianPath p = sample_path(3, n, dt, 1);

  double mean = 0.0;
  for (int i = 0; i < n; ++i) mean += p.increment(i, 0);
  mean /= n;
  // mean of N(0, dt) over n samples is N(0, dt/n); 4 sigma bound
  CHECK(std::fabs(mean) < 4.0 * std::sqrt(dt / n));

  double var = 0.0, skew = 0.0, kurt = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = p.increment(i, 0) - mean;
    var += d * d;
  }
  var /= n;
  // variance estimate concentrates as var * sqrt(2/n); 4 sigma bound
  CHECK(std::fabs(var - dt) < 4.0 * dt * std::sqrt(2.0 / n));

  const double sd = std::sqrt(var);
  for (int i = 0; i < n; ++i) {
    const double z = (p.increment(i, 0) - mean) / sd;
    skew += z * z * z;
    kurt += z * z * z * z;
  }
  skew /= n;
  kurt /= n;
  CHECK(std::fabs(skew) < 0.1);
  CHECK(std::fabs(kurt - 3.0) < 0.2);
}

TEST_CASE("coarsen_path") {
  BrownianPath p;
  p.n_steps = 4;
  p.components = 1;
  p.dt = 0.5;
  p.increments = {1.0, 2.0, 3.0, 4.0};

  const BrownianPath same = coarsen_path(p, 1);
  CHECK(same.increments == p.increments);

  const BrownianPath half = coarsen_path(p, 2);
  CHECK(half.n_steps == 2);
  CHECK(half.dt == 1.0);
  CHECK(half.increments[0] == 3.0);   // 1 + 2
  CHECK(half.increments[1] == 7.0);   // 3 + 4

  CHECK_THROWS_AS(coarsen_path(p, 3), ConfigError);

  // endpoint preserved on a long random path
  const BrownianPath fine = sample_path(11, 4096, 1e-4, 3);
  const BrownianPath coarse = coarsen_path(fine, 16);
  for (int j = 0; j < 3; ++j)
    CHECK(coarse.total(j) ==
          doctest::Approx(fine.total(j)).epsilon(1e-14).scale(1.0));

  // coarsening twice equals coarsening once at the product factor
  const BrownianPath twice = coarsen_path(coarsen_path(fine, 4), 4);
  const BrownianPath once = coarsen_path(fine, 16);
  for (size_t i = 0; i < once.increments.size(); ++i)
    CHECK(twice.increments[i] ==
          doctest::Approx(once.increments[i]).epsilon(1e-14).scale(1.0));
}

TEST_CASE("path export and import") {
  const BrownianPath p = sample_path(5, 100, 1e-3, 2);

  std::stringstream bin;
  write_path_binary(p, bin);
  const BrownianPath back = read_path_binary(bin);
  CHECK(back.n_steps == p.n_steps);
  CHECK(back.components == p.components);
  CHECK(back.dt == p.dt);
  CHECK(back.seed == p.seed);
  CHECK(back.increments == p.increments);  // bitwise

  std::stringstream csv;
  write_path_csv(p, csv);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "step,component,increment");
  // first row round-trips at full precision
  std::string row;
  std::getline(csv, row);
  const auto last_comma = row.rfind(',');
  CHECK(std::stod(row.substr(last_comma + 1)) == p.increment(0, 0));

  std::stringstream junk("not a path");
  CHECK_THROWS_AS(read_path_binary(junk), ConfigError);
}
