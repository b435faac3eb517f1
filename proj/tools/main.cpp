#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <vector>

#include "stochwave/cli.hpp"
#include "stochwave/errors.hpp"
#include "stochwave/integrators.hpp"

namespace {

stochwave::RunConfig load_with_overrides(const std::string& config_path,
                                         const std::vector<std::string>& overrides,
                                         std::int64_t seed, const std::string& output) {
  stochwave::RunConfig config;
  if (!config_path.empty()) config = stochwave::load_config(config_path);
  for (const auto& kv : overrides) stochwave::apply_override(config, kv);
  if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
  if (!output.empty()) config.output_dir = output;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral simulator for stochastic surface-wave models"};
  app.require_subcommand(1);

  std::string config_path, output;
  std::vector<std::string> overrides;
  std::int64_t seed = -1;
  app.add_option("--config", config_path, "JSON run configuration")->capture_default_str();
  app.add_option("--seed", seed, "master seed override");
  app.add_option("--output", output, "output directory override");
  app.add_option("--override", overrides, "config override key=value (repeatable)");

  auto* sim = app.add_subcommand("simulate", "advance one trajectory and write outputs");

  auto* cmp = app.add_subcommand("compare-schemes",
                                 "replay one path per seed through several schemes");
  std::vector<std::string> schemes = {"mild-euler", "duhamel-euler", "duhamel-milstein"};
  std::vector<std::uint64_t> seeds;
  cmp->add_option("--schemes", schemes, "schemes to compare")->capture_default_str();
  cmp->add_option("--seeds", seeds, "seeds (default: config seed)");

  auto* conv = app.add_subcommand("convergence", "strong-order estimation by path coarsening");
  std::vector<int> factors = {2, 4, 8, 16};
  int n_paths = 8;
  conv->add_option("--factors", factors, "coarsening factors")->capture_default_str();
  conv->add_option("--paths", n_paths, "number of Brownian paths")->capture_default_str();

  auto* sol = app.add_subcommand("solitary", "compute a solitary-wave profile");

  auto* self = app.add_subcommand("selfcheck", "run the quick invariant suite");

  CLI11_PARSE(app, argc, argv);

  try {
    const stochwave::RunConfig config =
        load_with_overrides(config_path, overrides, seed, output);
    if (sim->parsed()) {
      std::cout << stochwave::cmd_simulate(config).string() << '\n';
    } else if (cmp->parsed()) {
      if (seeds.empty()) seeds.push_back(config.seed);
      std::cout << stochwave::cmd_compare_schemes(config, schemes, seeds).string() << '\n';
    } else if (conv->parsed()) {
      std::cout << stochwave::cmd_convergence(config, factors, n_paths).string() << '\n';
    } else if (sol->parsed()) {
      std::cout << stochwave::cmd_solitary(config).string() << '\n';
    } else if (self->parsed()) {
      return stochwave::run_selfcheck() == 0 ? 0 : 1;
    }
  } catch (const stochwave::BlowUpError& e) {
    std::cerr << "error: " << e.what() << " (partial outputs flushed)\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
