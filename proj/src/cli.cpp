#include "stochwave/cli.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include "stochwave/diagnostics.hpp"
#include "stochwave/errors.hpp"
#include "stochwave/fft.hpp"
#include "stochwave/symbols.hpp"
#include "stochwave/waves.hpp"

namespace stochwave {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kCodeVersion = "stochwave 0.1.0";

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Run fn(i) for i in [0, n) on a small thread pool. Each index writes only
// its own slots/files, so results are merged deterministically afterwards.
void parallel_for_index(int n, const std::function<void(int)>& fn) {
  const int workers =
      std::max(1, std::min<int>(n, static_cast<int>(std::thread::hardware_concurrency())));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<size_t>(workers));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        errors[static_cast<size_t>(w)] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

ModelSpec RunConfig::model_spec() const {
  const ModelKind kind = model_from_name(model);
  switch (kind) {
    case ModelKind::airy: return ModelSpec::airy(gravity, depth);
    case ModelKind::whitham_boussinesq: return ModelSpec::whitham_boussinesq(gravity, depth);
    case ModelKind::boussinesq: return ModelSpec::boussinesq(gravity, depth, b);
    case ModelKind::bbm: return ModelSpec::bbm(gravity, depth, b);
    case ModelKind::modified_bbm: return ModelSpec::modified_bbm(gravity, depth, b);
    case ModelKind::fd_unidirectional: return ModelSpec::fd_unidirectional(gravity, depth);
    case ModelKind::whitham: return ModelSpec::whitham(gravity, depth);
  }
  throw ConfigError("unknown model: " + model);
}

Scheme RunConfig::scheme_enum() const { return scheme_from_name(scheme); }

int RunConfig::n_steps() const {
  const double steps = t_final / dt;
  const int n = static_cast<int>(std::llround(steps));
  if (t_final < 0.0 || std::fabs(steps - n) > 1e-9 * std::max(1.0, steps))
    throw ConfigError("t_final must be a non-negative integer multiple of dt");
  return n;
}

namespace {

const std::map<std::string, int>& config_keys() {
  // value: 0 = number, 1 = integer, 2 = string, 3 = bool, 4 = string array
  static const std::map<std::string, int> keys = {
      {"model", 2},          {"gravity", 0},          {"depth", 0},
      {"b", 0},              {"grid_length", 0},      {"grid_modes", 1},
      {"t_final", 0},        {"dt", 0},               {"snapshot_stride", 1},
      {"observer_stride", 1},{"epsilon", 0},          {"noise_components", 1},
      {"seed", 1},           {"scheme", 2},           {"initial", 2},
      {"solitary_speed", 0}, {"gaussian_amplitude", 0}, {"gaussian_width", 0},
      {"initial_file", 2},   {"observers", 4},        {"output_dir", 2},
      {"run_name", 2},       {"dealias", 3},          {"linear_noise_only", 3},
      {"export_path", 3},
  };
  return keys;
}

void validate_config(const RunConfig& c) {
  c.model_spec();
  c.scheme_enum();
  c.n_steps();
  make_grid(c.grid_length, c.grid_modes);  // validates L, N
  if (c.dt <= 0.0) throw ConfigError("dt must be positive");
  if (c.epsilon < 0.0) throw ConfigError("epsilon must be >= 0");
  if (c.noise_components < 1) throw ConfigError("noise_components must be >= 1");
  if (c.snapshot_stride < 0 || c.observer_stride < 0)
    throw ConfigError("strides must be >= 0");
  if (c.initial != "solitary" && c.initial != "gaussian" && c.initial != "file")
    throw ConfigError("initial must be one of solitary|gaussian|file");
  if (c.initial == "file" && c.initial_file.empty())
    throw ConfigError("initial_file required when initial = file");
  for (const auto& name : c.observers) make_observer(name);
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  RunConfig c;
  const auto& keys = config_keys();
  for (const auto& [key, value] : j.items()) {
    if (key == "code_version") continue;  // manifests reload as configs
    auto it = keys.find(key);
    if (it == keys.end()) throw ConfigError("unknown config key: " + key);
    const int kind = it->second;
    const bool ok = (kind == 0 && value.is_number()) ||
                    (kind == 1 && value.is_number_integer()) ||
                    (kind == 2 && value.is_string()) ||
                    (kind == 3 && value.is_boolean()) ||
                    (kind == 4 && value.is_array());
    if (!ok) throw ConfigError("wrong type for config key: " + key);
  }
  auto num = [&j](const char* k, double d) { return j.contains(k) ? j[k].get<double>() : d; };
  auto integer = [&j](const char* k, std::int64_t d) {
    return j.contains(k) ? j[k].get<std::int64_t>() : d;
  };
  auto str = [&j](const char* k, const std::string& d) {
    return j.contains(k) ? j[k].get<std::string>() : d;
  };
  auto boolean = [&j](const char* k, bool d) { return j.contains(k) ? j[k].get<bool>() : d; };

  c.model = str("model", c.model);
  c.gravity = num("gravity", c.gravity);
  c.depth = num("depth", c.depth);
  c.b = num("b", c.b);
  c.grid_length = num("grid_length", c.grid_length);
  c.grid_modes = static_cast<int>(integer("grid_modes", c.grid_modes));
  c.t_final = num("t_final", c.t_final);
  c.dt = num("dt", c.dt);
  c.snapshot_stride = static_cast<int>(integer("snapshot_stride", c.snapshot_stride));
  c.observer_stride = static_cast<int>(integer("observer_stride", c.observer_stride));
  c.epsilon = num("epsilon", c.epsilon);
  c.noise_components = static_cast<int>(integer("noise_components", c.noise_components));
  c.seed = static_cast<std::uint64_t>(integer("seed", static_cast<std::int64_t>(c.seed)));
  c.scheme = str("scheme", c.scheme);
  c.initial = str("initial", c.initial);
  c.solitary_speed = num("solitary_speed", c.solitary_speed);
  c.gaussian_amplitude = num("gaussian_amplitude", c.gaussian_amplitude);
  c.gaussian_width = num("gaussian_width", c.gaussian_width);
  c.initial_file = str("initial_file", c.initial_file);
  if (j.contains("observers")) {
    c.observers.clear();
    for (const auto& o : j["observers"]) {
      if (!o.is_string()) throw ConfigError("observers must be strings");
      c.observers.push_back(o.get<std::string>());
    }
  }
  c.output_dir = str("output_dir", c.output_dir);
  c.run_name = str("run_name", c.run_name);
  c.dealias = boolean("dealias", c.dealias);
  c.linear_noise_only = boolean("linear_noise_only", c.linear_noise_only);
  c.export_path = boolean("export_path", c.export_path);

  validate_config(c);
  return c;
}

RunConfig load_config(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file: " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const RunConfig& c) {
  json j;
  j["model"] = c.model;
  j["gravity"] = c.gravity;
  j["depth"] = c.depth;
  j["b"] = c.b;
  j["grid_length"] = c.grid_length;
  j["grid_modes"] = c.grid_modes;
  j["t_final"] = c.t_final;
  j["dt"] = c.dt;
  j["snapshot_stride"] = c.snapshot_stride;
  j["observer_stride"] = c.observer_stride;
  j["epsilon"] = c.epsilon;
  j["noise_components"] = c.noise_components;
  j["seed"] = c.seed;
  j["scheme"] = c.scheme;
  j["initial"] = c.initial;
  j["solitary_speed"] = c.solitary_speed;
  j["gaussian_amplitude"] = c.gaussian_amplitude;
  j["gaussian_width"] = c.gaussian_width;
  j["initial_file"] = c.initial_file;
  j["observers"] = c.observers;
  j["output_dir"] = c.output_dir;
  j["run_name"] = c.run_name;
  j["dealias"] = c.dealias;
  j["linear_noise_only"] = c.linear_noise_only;
  j["export_path"] = c.export_path;
  j["code_version"] = kCodeVersion;
  return j.dump(2) + "\n";
}

void apply_override(RunConfig& config, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos) throw ConfigError("override must look like key=value");
  const std::string key = kv.substr(0, eq);
  const std::string value = kv.substr(eq + 1);
  json j = json::parse(config_to_json(config));
  j.erase("code_version");
  if (!j.contains(key)) throw ConfigError("unknown config key: " + key);
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    parsed = value;  // bare strings stay strings
  }
  j[key] = parsed;
  config = parse_config(j.dump());
}

State build_initial_state(const RunConfig& config, const Grid& grid) {
  const ModelSpec model = config.model_spec();
  State u0;
  if (config.initial == "solitary") {
    if (model.components() == 2) {
      if (model.kind != ModelKind::whitham_boussinesq && model.kind != ModelKind::airy)
        throw ConfigError("solitary initial data supports WB and unidirectional models");
      TravelingWave wave =
          solitary_seed_wb(config.solitary_speed, grid, config.gravity, config.depth);
      if (wave.above_target)
        std::cerr << "warning: WB solitary residual " << wave.residual
                  << " above the 1e-8 target\n";
      u0 = std::move(wave.profile);
    } else {
      u0 = std::move(
          solve_solitary_unidirectional(model, config.solitary_speed, grid).profile);
    }
  } else if (config.initial == "gaussian") {
    RealField bump(grid);
    const double w = config.gaussian_width;
    for (int i = 0; i < grid.n_modes; ++i) {
      const double x = grid.x[static_cast<size_t>(i)];
      bump[i] = config.gaussian_amplitude * std::exp(-x * x / (2.0 * w * w));
    }
    u0 = State::zero(model, grid);
    u0[0] = std::move(bump);
  } else {
    std::ifstream in(config.initial_file);
    if (!in) throw ConfigError("cannot open initial file: " + config.initial_file);
    u0 = read_state_csv(in, grid, model.components());
  }

  // Periodic domain standing in for the line: fields must decay at the edges.
  for (int c = 0; c < u0.components(); ++c) {
    const RealField& f = u0[c];
    const double edge = std::max(std::fabs(f[0]), std::fabs(f[f.size() - 1]));
    if (edge > 1e-8 * max_abs(f))
      std::cerr << "warning: initial component " << c << " has boundary amplitude "
                << edge << " above 1e-8 of its maximum; domain may be too short\n";
  }
  return u0;
}

void write_state_csv(const State& u, std::ostream& os) {
  const Grid& grid = u.grid();
  os << "x";
  for (int c = 0; c < u.components(); ++c) os << ",c" << c;
  os << '\n';
  for (int i = 0; i < grid.n_modes; ++i) {
    os << fmt17(grid.x[static_cast<size_t>(i)]);
    for (int c = 0; c < u.components(); ++c) os << ',' << fmt17(u[c][i]);
    os << '\n';
  }
}

State read_state_csv(std::istream& is, const Grid& grid, int components) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("empty state file");
  State u;
  for (int c = 0; c < components; ++c) u.comps.emplace_back(grid);
  int row = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (row >= grid.n_modes) throw ConfigError("state file has too many rows");
    std::istringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');  // x column, ignored
    for (int c = 0; c < components; ++c) {
      if (!std::getline(ss, cell, ','))
        throw ConfigError("state file row has too few columns");
      u[c][row] = std::stod(cell);
    }
    ++row;
  }
  if (row != grid.n_modes)
    throw ConfigError("state file row count does not match the grid");
  return u;
}

namespace {

fs::path make_run_dir(const RunConfig& config) {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%d-%H%M%S", std::localtime(&tt));
  const fs::path base = fs::path(config.output_dir);
  fs::create_directories(base);
  fs::path dir = base / (config.run_name + "-" + stamp);
  for (int suffix = 1; fs::exists(dir); ++suffix)
    dir = base / (config.run_name + "-" + stamp + "-" + std::to_string(suffix));
  fs::create_directory(dir);
  return dir;
}

void write_manifest(const fs::path& dir, const RunConfig& config) {
  std::ofstream out(dir / "manifest.json");
  out << config_to_json(config);
}

void write_observer_outputs(const fs::path& dir, const std::vector<ObserverSeries>& series,
                            const RunConfig& config, const std::string& tag = "") {
  for (const auto& s : series) {
    ObserverSeries annotated = s;
    annotated.metadata["model"] = config.model;
    annotated.metadata["scheme"] = config.scheme;
    annotated.metadata["seed"] = std::to_string(config.seed);
    annotated.metadata["grid"] = "L=" + fmt17(config.grid_length) +
                                 ",N=" + std::to_string(config.grid_modes);
    annotated.metadata["noise"] = "epsilon=" + fmt17(config.epsilon) +
                                  ",m=" + std::to_string(config.noise_components);
    const std::string stem = s.name + tag;
    std::ofstream csv(dir / (stem + ".csv"));
    write_series_csv(annotated, csv);
    std::ofstream meta(dir / (stem + ".meta.json"));
    write_series_metadata_json(annotated, meta);
  }
}

void write_spectrum_csv(const RealField& f, std::ostream& os) {
  const Grid& grid = f.grid();
  const Spectrum spec = fft_forward(f);
  os << "xi,abs_coeff\n";
  // ascending xi for plot-ready output; coefficients scaled by dx to
  // approximate the continuum transform magnitude
  for (int k = -grid.n_modes / 2; k < grid.n_modes / 2; ++k) {
    const int idx = (k + grid.n_modes) % grid.n_modes;
    os << fmt17(2.0 * std::numbers::pi * k / grid.length) << ','
       << fmt17(std::abs(spec[static_cast<size_t>(idx)]) * grid.dx) << '\n';
  }
}

}  // namespace

std::filesystem::path cmd_simulate(const RunConfig& config) {
  const ModelSpec model = config.model_spec();
  const Grid grid = make_grid(config.grid_length, config.grid_modes);
  const NoiseSpec noise =
      gammas_from_epsilon(config.epsilon, config.noise_components, config.gravity,
                          config.depth);
  const BrownianPath path =
      sample_path(config.seed, config.n_steps(), config.dt, config.noise_components);
  const State u0 = build_initial_state(config, grid);

  SimulateOptions opts;
  opts.snapshot_stride = config.snapshot_stride;
  opts.observer_stride = config.observer_stride;
  for (const auto& name : config.observers) opts.observers.push_back(make_observer(name));
  opts.model_options.dealias = config.dealias;
  opts.model_options.linear_noise_only = config.linear_noise_only;

  const fs::path dir = make_run_dir(config);
  write_manifest(dir, config);
  if (config.export_path) {
    std::ofstream csv(dir / "path.csv");
    write_path_csv(path, csv);
    std::ofstream bin(dir / "path.bin", std::ios::binary);
    write_path_binary(path, bin);
  }

  Trajectory traj;
  try {
    traj = simulate(model, u0, config.t_final, config.dt, config.scheme_enum(), path,
                    noise, opts);
  } catch (const BlowUpError& e) {
    // flush what we have so the failure is inspectable, then propagate
    std::ofstream state_csv(dir / "last_finite_state.csv");
    write_state_csv(e.last_finite_state, state_csv);
    std::ofstream note(dir / "blowup.txt");
    note << e.what() << "\n";
    throw;
  }

  for (size_t i = 0; i < traj.snapshots.size(); ++i) {
    char name[64];
    std::snprintf(name, sizeof name, "snapshot_%05zu.csv", i);
    std::ofstream out(dir / name);
    out << "# t = " << fmt17(traj.snapshot_times[i]) << '\n';
    write_state_csv(traj.snapshots[i], out);
  }
  write_observer_outputs(dir, traj.series, config);
  {
    std::ofstream out(dir / "spectrum_final.csv");
    write_spectrum_csv(traj.snapshots.back()[0], out);
  }
  return dir;
}

std::filesystem::path cmd_compare_schemes(const RunConfig& config,
                                          const std::vector<std::string>& schemes,
                                          const std::vector<std::uint64_t>& seeds) {
  if (schemes.size() < 2)
    throw UsageError("compare-schemes needs at least two schemes");
  for (const auto& s : schemes) scheme_from_name(s);
  if (seeds.empty()) throw UsageError("compare-schemes needs at least one seed");

  const ModelSpec model = config.model_spec();
  const Grid grid = make_grid(config.grid_length, config.grid_modes);
  const NoiseSpec noise = gammas_from_epsilon(
      config.epsilon, config.noise_components, config.gravity, config.depth);
  const State u0 = build_initial_state(config, grid);

  const fs::path dir = make_run_dir(config);
  write_manifest(dir, config);

  const int stride = std::max(config.observer_stride, 1);

  // seeds run concurrently; each writes only its own files and summary rows,
  // merged by the single-threaded pass below
  std::vector<std::string> summary_rows(seeds.size());
  parallel_for_index(static_cast<int>(seeds.size()), [&](int si) {
    const std::uint64_t seed = seeds[static_cast<size_t>(si)];
    // one shared Brownian path per seed, replayed through every scheme
    const BrownianPath path =
        sample_path(seed, config.n_steps(), config.dt, config.noise_components);

    std::vector<Trajectory> trajs;
    std::string rows;
    for (const auto& scheme : schemes) {
      SimulateOptions opts;
      opts.observer_stride = stride;
      opts.snapshot_stride = stride;
      opts.observers.push_back(make_observer("energy"));
      opts.model_options.dealias = config.dealias;
      opts.model_options.linear_noise_only = config.linear_noise_only;
      trajs.push_back(simulate(model, u0, config.t_final, config.dt,
                               scheme_from_name(scheme), path, noise, opts));

      RunConfig annotated = config;
      annotated.scheme = scheme;
      annotated.seed = seed;
      write_observer_outputs(dir, trajs.back().series, annotated,
                             "_" + scheme + "_seed" + std::to_string(seed));

      const auto& energy_series = trajs.back().series.front();
      const double e0 = energy_series.values.front();
      double drift = 0.0;
      for (double e : energy_series.values)
        drift = std::max(drift, std::fabs(e - e0) / std::fabs(e0));
      rows += scheme + ',' + std::to_string(seed) + ',' + fmt17(drift) + '\n';
    }
    summary_rows[static_cast<size_t>(si)] = rows;

    for (size_t a = 0; a < schemes.size(); ++a)
      for (size_t bdx = a + 1; bdx < schemes.size(); ++bdx) {
        std::ofstream diff(dir / ("diff_" + schemes[a] + "_vs_" + schemes[bdx] +
                                  "_seed" + std::to_string(seed) + ".csv"));
        diff << "t,l2_difference\n";
        const auto& ta = trajs[a];
        const auto& tb = trajs[bdx];
        for (size_t i = 0; i < ta.snapshots.size(); ++i)
          diff << fmt17(ta.snapshot_times[i]) << ','
               << fmt17(l2_norm(ta.snapshots[i] - tb.snapshots[i])) << '\n';
      }
  });

  std::ofstream summary(dir / "summary.csv");
  summary << "scheme,seed,max_rel_energy_drift\n";
  for (const auto& rows : summary_rows) summary << rows;
  return dir;
}

ConvergenceResult strong_convergence_study(const ModelSpec& model, const State& u0,
                                           double T, double dt_fine,
                                           const std::vector<int>& factors,
                                           const std::vector<Scheme>& schemes,
                                           const NoiseSpec& noise,
                                           std::uint64_t base_seed, int n_paths) {
  const double steps_real = T / dt_fine;
  const int n_fine = static_cast<int>(std::llround(steps_real));
  if (std::fabs(steps_real - n_fine) > 1e-9 * std::max(1.0, steps_real) || n_fine < 1)
    throw ConfigError("T must be a positive integer multiple of dt_fine");
  for (int f : factors)
    if (f < 2 || n_fine % f != 0)
      throw ConfigError("factors must be >= 2 and divide the fine step count");

  ConvergenceResult result;
  result.factors = factors;
  for (Scheme s : schemes)
    result.mean_errors[scheme_name(s)].assign(factors.size(), 0.0);

  // paths run concurrently into private slots; the reduction below walks them
  // in path order so the totals are deterministic
  std::vector<std::vector<std::vector<double>>> per_path(
      static_cast<size_t>(n_paths),
      std::vector<std::vector<double>>(schemes.size(),
                                       std::vector<double>(factors.size(), 0.0)));
  parallel_for_index(n_paths, [&](int p) {
    const BrownianPath fine =
        sample_path(base_seed + static_cast<std::uint64_t>(p), n_fine, dt_fine,
                    noise.components());
    // one shared reference per path: the strongest scheme at the fine step
    const Trajectory ref =
        simulate(model, u0, T, dt_fine, Scheme::duhamel_milstein, fine, noise);
    const State& u_ref = ref.snapshots.back();
    for (size_t si = 0; si < schemes.size(); ++si) {
      for (size_t fi = 0; fi < factors.size(); ++fi) {
        const BrownianPath coarse = coarsen_path(fine, factors[fi]);
        const Trajectory run =
            simulate(model, u0, T, coarse.dt, schemes[si], coarse, noise);
        per_path[static_cast<size_t>(p)][si][fi] =
            l2_norm(run.snapshots.back() - u_ref);
      }
    }
  });
  for (int p = 0; p < n_paths; ++p)
    for (size_t si = 0; si < schemes.size(); ++si)
      for (size_t fi = 0; fi < factors.size(); ++fi)
        result.mean_errors[scheme_name(schemes[si])][fi] +=
            per_path[static_cast<size_t>(p)][si][fi] / n_paths;

  for (Scheme scheme : schemes) {
    std::vector<double> dts;
    for (int f : factors) dts.push_back(dt_fine * f);
    try {
      result.fitted_order[scheme_name(scheme)] =
          fit_loglog_slope(dts, result.mean_errors[scheme_name(scheme)]);
    } catch (const UsageError&) {
      // errors at round-off can vanish exactly; no slope to fit then
      result.fitted_order[scheme_name(scheme)] = std::nan("");
    }
  }
  return result;
}

std::filesystem::path cmd_convergence(const RunConfig& config,
                                      const std::vector<int>& factors, int n_paths) {
  if (factors.empty()) throw UsageError("convergence needs at least one factor");
  const ModelSpec model = config.model_spec();
  const Grid grid = make_grid(config.grid_length, config.grid_modes);
  const NoiseSpec noise = gammas_from_epsilon(
      config.epsilon, config.noise_components, config.gravity, config.depth);
  const State u0 = build_initial_state(config, grid);

  const std::vector<Scheme> schemes = {Scheme::mild_euler, Scheme::duhamel_euler,
                                       Scheme::duhamel_milstein};
  const ConvergenceResult result = strong_convergence_study(
      model, u0, config.t_final, config.dt, factors, schemes, noise, config.seed,
      n_paths);

  const fs::path dir = make_run_dir(config);
  write_manifest(dir, config);
  std::ofstream csv(dir / "strong_errors.csv");
  csv << "scheme,factor,dt,mean_error\n";
  for (const auto& [scheme, errors] : result.mean_errors)
    for (size_t i = 0; i < factors.size(); ++i)
      csv << scheme << ',' << factors[i] << ',' << fmt17(config.dt * factors[i]) << ','
          << fmt17(errors[i]) << '\n';
  std::ofstream orders(dir / "fitted_orders.csv");
  orders << "scheme,order\n";
  for (const auto& [scheme, order] : result.fitted_order)
    orders << scheme << ',' << fmt17(order) << '\n';
  return dir;
}

std::filesystem::path cmd_solitary(const RunConfig& config) {
  const ModelSpec model = config.model_spec();
  const Grid grid = make_grid(config.grid_length, config.grid_modes);
  TravelingWave wave;
  if (model.components() == 2)
    wave = solitary_seed_wb(config.solitary_speed, grid, config.gravity, config.depth);
  else
    wave = solve_solitary_unidirectional(model, config.solitary_speed, grid);

  const fs::path dir = make_run_dir(config);
  write_manifest(dir, config);
  std::ofstream profile(dir / "profile.csv");
  write_state_csv(wave.profile, profile);
  std::ofstream meta(dir / "profile.meta.json");
  meta << "{\n  \"speed\": " << fmt17(wave.speed)
       << ",\n  \"residual\": " << fmt17(wave.residual)
       << ",\n  \"iterations\": " << wave.iterations << "\n}\n";
  return dir;
}

int run_selfcheck() {
  int failures = 0;
  auto check = [&failures](const std::string& name, bool ok) {
    std::cout << (ok ? "[ OK ] " : "[FAIL] ") << name << '\n';
    if (!ok) ++failures;
  };

  // noise amplitude relation
  {
    const NoiseSpec noise = gammas_from_epsilon(0.1, 4, 1.0, 1.0);
    check("noise relation (1/2) sum gamma^2 = sqrt(g h^3) eps",
          std::fabs(0.5 * noise.sum_gamma_sq() - 0.1) < 1e-14);
  }
  // multiplier realness on random smooth fields
  {
    const Grid grid = make_grid(40.0, 128);
    bool ok = true;
    for (std::uint64_t s = 0; s < 4; ++s) {
      const RealField f = random_smooth_field(grid, s);
      for (const Symbol& sym :
           {k_symbol(1.0), derivative_symbol(), g0_symbol(1.0), kb_symbol(0.3)}) {
        const RealField out = apply_multiplier(sym, f);  // throws on violation
        ok = ok && std::isfinite(l2_norm(out));
      }
    }
    check("multiplier applications stay real", ok);
  }
  // Parseval convention
  {
    const Grid grid = make_grid(25.0, 64);
    const RealField f = random_smooth_field(grid, 11);
    const Spectrum spec = fft_forward(f);
    double phys = 0.0;
    for (int i = 0; i < f.size(); ++i) phys += f[i] * f[i];
    phys *= grid.dx;
    double spectral = 0.0;
    for (const auto& cv : spec) spectral += std::norm(cv);
    spectral *= grid.dx * grid.dx / grid.length;
    check("Parseval convention", std::fabs(phys - spectral) < 1e-12 * std::max(phys, 1.0));
  }
  // propagator semigroup property
  {
    const Grid grid = make_grid(50.0, 128);
    const ModelSpec model = ModelSpec::whitham_boussinesq(1.0, 1.0);
    const NoiseSpec noise = gammas_from_epsilon(0.1, 1, 1.0, 1.0);
    const std::vector<double> dw1 = {0.013}, dw2 = {-0.004}, dw12 = {0.009};
    State u(random_smooth_field(grid, 3), random_smooth_field(grid, 4));
    const State a = Propagator::duhamel(model, grid, 0.02, dw2, noise)
                        .apply(Propagator::duhamel(model, grid, 0.01, dw1, noise).apply(u));
    const State b = Propagator::duhamel(model, grid, 0.03, dw12, noise).apply(u);
    check("duhamel propagator semigroup", l2_norm(a - b) <= 1e-12 * l2_norm(b) + 1e-14);
  }
  // deterministic scheme agreement
  {
    const Grid grid = make_grid(50.0, 128);
    const ModelSpec model = ModelSpec::whitham_boussinesq(1.0, 1.0);
    const NoiseSpec noise = gammas_from_epsilon(0.0, 1, 1.0, 1.0);
    const ModelOps ops(model, grid);
    const std::vector<double> dw = {0.5};  // multiplied by gamma = 0
    State u(random_smooth_field(grid, 5, 8.0, 0.05), random_smooth_field(grid, 6, 8.0, 0.05));
    const State a = step_mild_euler(ops, u, 1e-3, dw, noise);
    const State b = step_duhamel_euler(ops, u, 1e-3, dw, noise);
    const State c = step_duhamel_milstein(ops, u, 1e-3, dw, noise);
    check("eps = 0 scheme agreement",
          l2_norm(a - b) <= 1e-12 * l2_norm(a) && l2_norm(a - c) <= 1e-12 * l2_norm(a));
  }
  // G0 self-adjointness
  {
    const Grid grid = make_grid(30.0, 128);
    const RealField phi = random_smooth_field(grid, 21);
    const RealField psi = random_smooth_field(grid, 22);
    const double lhs = inner(phi, dno_g0(psi, 1.0));
    const double rhs = inner(dno_g0(phi, 1.0), psi);
    check("G0 self-adjoint", std::fabs(lhs - rhs) <= 1e-12 * std::max(std::fabs(lhs), 1.0));
  }
  return failures;
}

}  // namespace stochwave
