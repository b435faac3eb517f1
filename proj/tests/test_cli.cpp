#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "stochwave/cli.hpp"
#include "stochwave/errors.hpp"
#include "stochwave/integrators.hpp"

using namespace stochwave;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_out() {
  static int counter = 0;
  const fs::path dir =
      fs::temp_directory_path() / ("stochwave-test-" + std::to_string(counter++));
  fs::remove_all(dir);
  return dir;
}

RunConfig tiny_config(const fs::path& out) {
  RunConfig c;
  c.model = "whitham-boussinesq";
  c.grid_length = 50.0;
  c.grid_modes = 64;
  c.t_final = 0.02;
  c.dt = 1e-3;
  c.observer_stride = 5;
  c.epsilon = 0.1;
  c.seed = 42;
  c.initial = "gaussian";
  c.gaussian_amplitude = 0.1;
  c.gaussian_width = 4.0;
  c.output_dir = out.string();
  return c;
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("defaults survive an empty object") {
    const RunConfig c = parse_config("{}");
    CHECK(c.model == "whitham-boussinesq");
    CHECK(c.grid_modes == 1024);
    CHECK(c.scheme == "duhamel-milstein");
  }

  SUBCASE("values are read and validated") {
    const RunConfig c = parse_config(R"({"model": "whitham", "dt": 0.001,
      "t_final": 1.0, "grid_modes": 128, "grid_length": 50.0, "seed": 7})");
    CHECK(c.model == "whitham");
    CHECK(c.seed == 7);
    CHECK(c.n_steps() == 1000);
  }

  SUBCASE("strictness") {
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"mystery_key": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"dt": "fast"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"model": "kdv"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"scheme": "rk4"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"t_final": 0.0005, "dt": 0.0002})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"grid_modes": 13})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"observers": ["bogus"]})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"initial": "file"})"), ConfigError);
  }

  SUBCASE("round-trip through JSON") {
    RunConfig c = parse_config("{}");
    c.model = "bbm";
    c.b = 0.25;
    c.epsilon = 0.05;
    const RunConfig back = parse_config(config_to_json(c));
    CHECK(back.model == "bbm");
    CHECK(back.b == 0.25);
    CHECK(back.epsilon == 0.05);
  }

  SUBCASE("overrides") {
    RunConfig c = parse_config("{}");
    apply_override(c, "dt=0.001");
    CHECK(c.dt == 0.001);
    apply_override(c, "model=whitham");
    CHECK(c.model == "whitham");
    apply_override(c, "observers=[\"energy\"]");
    CHECK(c.observers.size() == 1);
    CHECK_THROWS_AS(apply_override(c, "nothing"), ConfigError);
    CHECK_THROWS_AS(apply_override(c, "bogus_key=3"), ConfigError);
  }
}

TEST_CASE("state CSV round trip") {
  const Grid grid = make_grid(30.0, 64);
  State u{RealField(grid), RealField(grid)};
  for (int i = 0; i < grid.n_modes; ++i) {
    u[0][i] = std::sin(0.21 * i) * 1e-3;
    u[1][i] = std::cos(0.13 * i);
  }
  std::stringstream ss;
  write_state_csv(u, ss);
  const State back = read_state_csv(ss, grid, 2);
  CHECK(back[0].samples() == u[0].samples());  // 17 digits round-trip exactly
  CHECK(back[1].samples() == u[1].samples());
}

TEST_CASE("cmd_simulate writes a complete run directory") {
  const fs::path out = temp_out();
  const RunConfig config = tiny_config(out);
  const fs::path dir = cmd_simulate(config);

  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "snapshot_00000.csv"));
  CHECK(fs::exists(dir / "energy.csv"));
  CHECK(fs::exists(dir / "energy.meta.json"));
  CHECK(fs::exists(dir / "mass.csv"));
  CHECK(fs::exists(dir / "spectrum_final.csv"));

  SUBCASE("T = 0 leaves only the initial snapshot") {
    RunConfig c0 = config;
    c0.t_final = 0.0;
    const fs::path dir0 = cmd_simulate(c0);
    CHECK(fs::exists(dir0 / "snapshot_00000.csv"));
    CHECK(!fs::exists(dir0 / "snapshot_00001.csv"));
    std::istringstream energy(slurp(dir0 / "energy.csv"));
    std::string line;
    int rows = 0;
    while (std::getline(energy, line))
      if (!line.empty()) ++rows;
    CHECK(rows == 2);  // header + single sample
  }

  SUBCASE("same seed reruns byte-identically, directories never collide") {
    const fs::path dir2 = cmd_simulate(config);
    CHECK(dir2 != dir);
    CHECK(slurp(dir2 / "energy.csv") == slurp(dir / "energy.csv"));
    CHECK(slurp(dir2 / "mass.csv") == slurp(dir / "mass.csv"));
  }

  SUBCASE("manifest reloads into an equivalent run") {
    const RunConfig replay = load_config(dir / "manifest.json");
    const fs::path dir3 = cmd_simulate(replay);
    CHECK(slurp(dir3 / "energy.csv") == slurp(dir / "energy.csv"));
  }

  SUBCASE("export_path emits a replayable Brownian path") {
    RunConfig c = config;
    c.export_path = true;
    const fs::path dir4 = cmd_simulate(c);
    CHECK(fs::exists(dir4 / "path.csv"));
    std::ifstream bin(dir4 / "path.bin", std::ios::binary);
    const BrownianPath back = read_path_binary(bin);
    const BrownianPath expected = sample_path(c.seed, c.n_steps(), c.dt, 1);
    CHECK(back.increments == expected.increments);
  }
}

TEST_CASE("cmd_compare_schemes") {
  const fs::path out = temp_out();
  RunConfig config = tiny_config(out);
  config.epsilon = 0.0;  // deterministic collapse
  config.t_final = 0.01;

  CHECK_THROWS_AS(cmd_compare_schemes(config, {"duhamel-euler"}, {1}), UsageError);

  const std::vector<std::string> all = {"mild-euler", "duhamel-euler", "duhamel-milstein"};
  const fs::path dir = cmd_compare_schemes(config, all, {1, 2});
  CHECK(fs::exists(dir / "summary.csv"));
  CHECK(fs::exists(dir / "energy_mild-euler_seed1.csv"));
  CHECK(fs::exists(dir / "diff_mild-euler_vs_duhamel-euler_seed1.csv"));

  // with eps = 0 every pairwise difference is at round-off
  std::istringstream diff(slurp(dir / "diff_mild-euler_vs_duhamel-milstein_seed2.csv"));
  std::string line;
  std::getline(diff, line);  // header
  while (std::getline(diff, line)) {
    if (line.empty()) continue;
    const double value = std::stod(line.substr(line.find(',') + 1));
    CHECK(value <= 1e-12);
  }
}

TEST_CASE("cmd_convergence on the exactly-solved linear model") {
  const fs::path out = temp_out();
  RunConfig config = tiny_config(out);
  config.model = "airy";
  config.epsilon = 0.1;
  config.t_final = 0.016;
  config.dt = 1e-3;  // 16 fine steps

  const fs::path dir = cmd_convergence(config, {2, 4}, 2);
  CHECK(fs::exists(dir / "strong_errors.csv"));
  CHECK(fs::exists(dir / "fitted_orders.csv"));

  std::istringstream errors(slurp(dir / "strong_errors.csv"));
  std::string line;
  std::getline(errors, line);  // header
  while (std::getline(errors, line)) {
    if (line.empty()) continue;
    const auto first = line.find(',');
    const std::string scheme = line.substr(0, first);
    const double err = std::stod(line.substr(line.rfind(',') + 1));
    if (scheme != "mild-euler") CHECK(err <= 1e-10);  // Duhamel schemes are exact
  }
}

TEST_CASE("cmd_solitary emits a profile with metadata") {
  const fs::path out = temp_out();
  RunConfig config = tiny_config(out);
  config.model = "whitham";
  config.grid_length = 150.0;
  config.grid_modes = 512;
  config.solitary_speed = 1.1;
  config.initial = "solitary";
  const fs::path dir = cmd_solitary(config);
  CHECK(fs::exists(dir / "profile.csv"));
  const std::string meta = slurp(dir / "profile.meta.json");
  CHECK(meta.find("\"residual\"") != std::string::npos);
  CHECK(meta.find("\"speed\": 1.1") != std::string::npos);
}

TEST_CASE("blow-up flushes partial outputs and propagates") {
  const fs::path out = temp_out();
  RunConfig config = tiny_config(out);
  config.gaussian_amplitude = 1e8;  // unresolvable, explodes immediately
  config.t_final = 0.5;
  config.dt = 0.1;
  CHECK_THROWS_AS(cmd_simulate(config), BlowUpError);
  // the freshly created run directory holds the diagnostics
  bool found = false;
  for (const auto& entry : fs::directory_iterator(out))
    if (fs::exists(entry.path() / "blowup.txt") &&
        fs::exists(entry.path() / "last_finite_state.csv"))
      found = true;
  CHECK(found);
}

TEST_CASE("selfcheck passes") { CHECK(run_selfcheck() == 0); }
