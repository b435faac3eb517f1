#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "stochwave/integrators.hpp"
#include "stochwave/models.hpp"
#include "stochwave/noise.hpp"

namespace stochwave {

// Flat run configuration mirroring the JSON config schema.
struct RunConfig {
  std::string model = "whitham-boussinesq";
  double gravity = 1.0;
  double depth = 1.0;
  double b = 0.0;

  double grid_length = 200.0;
  int grid_modes = 1024;

  double t_final = 50.0;
  double dt = 5e-4;
  int snapshot_stride = 0;   // 0: first/last only
  int observer_stride = 100;

  double epsilon = 0.1;
  int noise_components = 1;
  std::uint64_t seed = 1;

  std::string scheme = "duhamel-milstein";

  std::string initial = "solitary";  // solitary | gaussian | file
  double solitary_speed = 1.1;
  double gaussian_amplitude = 0.1;
  double gaussian_width = 5.0;
  std::string initial_file;

  std::vector<std::string> observers = {"energy", "mass"};
  std::string output_dir = "out";
  std::string run_name = "run";
  bool dealias = false;
  bool linear_noise_only = false;
  bool export_path = false;  // write the Brownian path (CSV + binary) for replay

  ModelSpec model_spec() const;
  Scheme scheme_enum() const;
  int n_steps() const;
};

// Strict parse: unknown keys, wrong types or violated invariants throw
// ConfigError. `code_version` is tolerated so manifests reload as configs.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& file);
std::string config_to_json(const RunConfig& config);

// Apply "key=value" overrides on top of a parsed config.
void apply_override(RunConfig& config, const std::string& key_equals_value);

// Build the configured initial state (and warn on stderr when it fails the
// boundary-decay check).
State build_initial_state(const RunConfig& config, const Grid& grid);

// Commands; each creates a fresh timestamped run directory under
// config.output_dir and returns it.
std::filesystem::path cmd_simulate(const RunConfig& config);
std::filesystem::path cmd_compare_schemes(const RunConfig& config,
                                          const std::vector<std::string>& schemes,
                                          const std::vector<std::uint64_t>& seeds);
std::filesystem::path cmd_convergence(const RunConfig& config,
                                      const std::vector<int>& factors, int n_paths);
std::filesystem::path cmd_solitary(const RunConfig& config);

// Quick invariant suite; returns the number of failed checks.
int run_selfcheck();

// Strong-error study against a fine-path reference shared across schemes.
struct ConvergenceResult {
  std::vector<int> factors;                              // coarsening factors > 1
  std::map<std::string, std::vector<double>> mean_errors;  // scheme -> error per factor
  std::map<std::string, double> fitted_order;
};
ConvergenceResult strong_convergence_study(const ModelSpec& model, const State& u0,
                                           double T, double dt_fine,
                                           const std::vector<int>& factors,
                                           const std::vector<Scheme>& schemes,
                                           const NoiseSpec& noise,
                                           std::uint64_t base_seed, int n_paths);

// Snapshot I/O: columns x, then one column per component.
void write_state_csv(const State& u, std::ostream& os);
State read_state_csv(std::istream& is, const Grid& grid, int components);

}  // namespace stochwave
