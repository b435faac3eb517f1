#include "stochwave/noise.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>

#include "stochwave/errors.hpp"

namespace stochwave {
namespace {

// Philox4x32-10 counter-based generator (Salmon et al.). A keyed bijection
// of the 128-bit counter; distinct (key, counter) blocks give independent
// uniforms, which is what makes component streams splittable.
struct U4 {
  std::uint32_t v[4];
};

inline void philox_round(U4& ctr, std::uint32_t k0, std::uint32_t k1) {
  const std::uint64_t m0 = 0xD2511F53ull * ctr.v[0];
  const std::uint64_t m1 = 0xCD9E8D57ull * ctr.v[2];
  U4 out;
  out.v[0] = static_cast<std::uint32_t>(m1 >> 32) ^ ctr.v[1] ^ k0;
  out.v[1] = static_cast<std::uint32_t>(m1);
  out.v[2] = static_cast<std::uint32_t>(m0 >> 32) ^ ctr.v[3] ^ k1;
  out.v[3] = static_cast<std::uint32_t>(m0);
  ctr = out;
}

U4 philox4x32_10(U4 ctr, std::uint32_t key0, std::uint32_t key1) {
  for (int round = 0; round < 10; ++round) {
    philox_round(ctr, key0, key1);
    key0 += 0x9E3779B9u;  // golden ratio
    key1 += 0xBB67AE85u;  // sqrt(3) - 1
  }
  return ctr;
}

inline double to_open_unit(std::uint32_t hi, std::uint32_t lo) {
  // 53 significant bits, offset into the open interval (0, 1).
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1p-53;
}

}  // namespace

double normal_sample(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  U4 ctr{{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)}};
  const U4 r = philox4x32_10(ctr, static_cast<std::uint32_t>(seed),
                             static_cast<std::uint32_t>(seed >> 32));
  const double u1 = to_open_unit(r.v[0], r.v[1]);
  const double u2 = to_open_unit(r.v[2], r.v[3]);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double NoiseSpec::sum_gamma_sq() const {
  double s = 0.0;
  for (double g : gammas) s += g * g;
  return s;
}

NoiseSpec gammas_from_epsilon(double epsilon, int m, double g, double h) {
  if (epsilon < 0.0) throw ConfigError("noise level epsilon must be >= 0");
  if (m < 1) throw ConfigError("noise component count must be >= 1");
  if (g <= 0.0 || h <= 0.0) throw ConfigError("g and h must be positive");
  NoiseSpec spec;
  spec.epsilon = epsilon;
  const double gamma = std::sqrt(2.0 * std::sqrt(g * h * h * h) * epsilon / m);
  spec.gammas.assign(static_cast<size_t>(m), gamma);
  return spec;
}

double BrownianPath::partial_sum(int j, int n_steps_summed) const {
  double s = 0.0;
  for (int n = 0; n < n_steps_summed; ++n) s += increment(n, j);
  return s;
}

BrownianPath sample_path(std::uint64_t seed, int n_steps, double dt, int m) {
  if (dt <= 0.0) throw ConfigError("path step size must be positive");
  if (n_steps < 0 || m < 1) throw ConfigError("invalid path dimensions");
  BrownianPath path;
  path.seed = seed;
  path.n_steps = n_steps;
  path.components = m;
  path.dt = dt;
  path.increments.resize(static_cast<size_t>(n_steps) * m);
  const double root_dt = std::sqrt(dt);
  for (int n = 0; n < n_steps; ++n)
    for (int j = 0; j < m; ++j)
      path.increments[static_cast<size_t>(n) * m + j] =
          root_dt * normal_sample(seed, static_cast<std::uint64_t>(j),
                                  static_cast<std::uint64_t>(n));
  return path;
}

BrownianPath coarsen_path(const BrownianPath& path, int factor) {
  if (factor < 1 || path.n_steps % factor != 0)
    throw ConfigError("coarsening factor must divide the step count");
  BrownianPath out;
  out.seed = path.seed;
  out.n_steps = path.n_steps / factor;
  out.components = path.components;
  out.dt = path.dt * factor;
  out.increments.resize(static_cast<size_t>(out.n_steps) * out.components);
  for (int n = 0; n < out.n_steps; ++n) {
    for (int j = 0; j < out.components; ++j) {
      double s = 0.0;  // left-to-right, so partial sums match bit-for-bit
      for (int q = 0; q < factor; ++q) s += path.increment(n * factor + q, j);
      out.increments[static_cast<size_t>(n) * out.components + j] = s;
    }
  }
  return out;
}

void write_path_csv(const BrownianPath& path, std::ostream& os) {
  os << "step,component,increment\n";
  char buf[64];
  for (int n = 0; n < path.n_steps; ++n)
    for (int j = 0; j < path.components; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", path.increment(n, j));
      os << n << ',' << j << ',' << buf << '\n';
    }
}

namespace {
constexpr std::uint64_t kPathMagic = 0x53574250414748ull;  // "SWBPAGH"
}

void write_path_binary(const BrownianPath& path, std::ostream& os) {
  auto put = [&os](const void* p, size_t n) {
    os.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  };
  std::uint64_t steps = static_cast<std::uint64_t>(path.n_steps);
  std::uint64_t comps = static_cast<std::uint64_t>(path.components);
  put(&kPathMagic, 8);
  put(&steps, 8);
  put(&comps, 8);
  put(&path.dt, 8);
  put(&path.seed, 8);
  put(path.increments.data(), path.increments.size() * sizeof(double));
}

BrownianPath read_path_binary(std::istream& is) {
  auto get = [&is](void* p, size_t n) {
    is.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  };
  std::uint64_t magic = 0, steps = 0, comps = 0;
  BrownianPath path;
  get(&magic, 8);
  if (magic != kPathMagic) throw ConfigError("not a Brownian path file");
  get(&steps, 8);
  get(&comps, 8);
  get(&path.dt, 8);
  get(&path.seed, 8);
  path.n_steps = static_cast<int>(steps);
  path.components = static_cast<int>(comps);
  path.increments.resize(steps * comps);
  get(path.increments.data(), path.increments.size() * sizeof(double));
  if (!is) throw ConfigError("truncated Brownian path file");
  return path;
}

}  // namespace stochwave
