// coprime: design, analyze and estimate with co-prime sparse samplers.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 closed form
// inapplicable (coincident subarray elements) under --strict, 1 otherwise.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coprime/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInapplicable = 3;

struct Flags {
  std::optional<std::string> config_path;
  std::optional<std::string> family;
  std::optional<int> M, N, shift, sparsity;
  std::optional<std::string> shifts;
  std::optional<std::string> row_pattern;
  std::optional<std::vector<std::string>> peaks;
  std::optional<std::vector<double>> amplitudes;
  std::optional<double> noise;
  std::optional<std::size_t> snapshots, trials, grid;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::optional<std::vector<double>> band;
  std::optional<std::string> out;
  bool displaced = false;
  bool compare_prototype = false;
  bool strict = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("-c,--config", f.config_path, "JSON experiment config; flags override its keys")
      ->check(CLI::ExistingFile);
  cmd->add_option("--family", f.family, "apca | exsca | generalized | hybrid2d");
  cmd->add_option("-M", f.M, "first co-prime integer");
  cmd->add_option("-N", f.N, "second co-prime integer");
  cmd->add_option("-s,--shift", f.shift, "shift of the second subarray");
  cmd->add_option("--shifts", f.shifts, "inclusive shift sweep a:b");
  cmd->add_option("--ex,--sparsity", f.sparsity, "sparsity factor (exsca, hybrid2d)");
  cmd->add_flag("--displaced", f.displaced, "allow shifts beyond the canonical range");
  cmd->add_option("--row-pattern", f.row_pattern, "hybrid2d row factor: nyquist | exsca");
  cmd->add_option("-g,--grid", f.grid, "frequency grid size");
  cmd->add_option("-o,--out", f.out, "output directory (else $COPRIME_OUT_DIR, else ./coprime_out)");
  cmd->add_flag("--strict", f.strict, "exit 3 when the closed form does not apply");
}

void add_signal(CLI::App* cmd, Flags& f) {
  cmd->add_option("--peaks", f.peaks, "peak frequencies; 'f' in 1D, 'f1,f2' for hybrid2d");
  cmd->add_option("--amplitudes", f.amplitudes, "per-peak amplitudes");
  cmd->add_option("--noise", f.noise, "complex noise variance");
  cmd->add_option("-K,--snapshots", f.snapshots, "snapshots per estimate");
  cmd->add_option("--trials", f.trials, "independent trials");
  cmd->add_option("--seed", f.seed, "base random seed");
  cmd->add_option("--tolerance", f.tolerance, "peak-location tolerance");
  cmd->add_option("--band", f.band, "peak-search band lo hi")->expected(2);
  cmd->add_flag("--compare-prototype", f.compare_prototype, "also run the prototype co-prime array");
}

coprime::Json peak_json(const std::string& text) {
  std::vector<double> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      coords.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw coprime::ConfigError("bad peak '" + text + "'");
    }
  }
  if (coords.empty()) throw coprime::ConfigError("bad peak '" + text + "'");
  return coords.size() == 1 ? coprime::Json(coords.front()) : coprime::Json(coords);
}

coprime::Json overrides_from(const Flags& f) {
  coprime::Json j = coprime::Json::object();
  if (f.family) j["family"] = *f.family;
  if (f.M) j["M"] = *f.M;
  if (f.N) j["N"] = *f.N;
  if (f.shift) j["shift"] = *f.shift;
  if (f.shifts) j["shifts"] = *f.shifts;
  if (f.sparsity) j["sparsity"] = *f.sparsity;
  if (f.displaced) j["displaced"] = true;
  if (f.row_pattern) j["row_pattern"] = *f.row_pattern;
  if (f.peaks) {
    coprime::Json arr = coprime::Json::array();
    for (const auto& p : *f.peaks) arr.push_back(peak_json(p));
    j["peaks"] = std::move(arr);
  }
  if (f.amplitudes) j["amplitudes"] = *f.amplitudes;
  if (f.noise) j["noise_variance"] = *f.noise;
  if (f.snapshots) j["snapshots"] = *f.snapshots;
  if (f.trials) j["trials"] = *f.trials;
  if (f.seed) j["seed"] = *f.seed;
  if (f.grid) j["grid"] = *f.grid;
  if (f.tolerance) j["tolerance"] = *f.tolerance;
  if (f.band) j["band"] = *f.band;
  if (f.compare_prototype) j["compare_prototype"] = true;
  return j;
}

coprime::ExperimentConfig load(const Flags& f) {
  coprime::Json base = coprime::Json::object();
  if (f.config_path) {
    std::ifstream in(*f.config_path);
    try {
      base = coprime::Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw coprime::ConfigError(*f.config_path + ": " + e.what());
    }
  }
  return coprime::parse_config(coprime::merge_config(std::move(base), overrides_from(f)));
}

int finish(const coprime::RunResult& run, const Flags& f, const coprime::ExperimentConfig& cfg,
           const std::string& report_name, bool always_write) {
  const char* env = std::getenv("COPRIME_OUT_DIR");
  const bool explicit_dir = (f.out && !f.out->empty()) || cfg.output_dir || (env && *env);
  if (always_write || explicit_dir) {
    const auto dir = coprime::resolve_output_dir(f.out, cfg, env);
    coprime::write_artifacts(dir, run, report_name);
    std::cerr << "wrote " << (dir / report_name).string() << '\n';
  }
  if (f.strict && run.inapplicable) {
    std::cerr << "closed form inapplicable: subarrays share positions\n";
    return kExitInapplicable;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Co-prime sparse sampler design, analysis and spectral estimation"};
  app.require_subcommand(1);
  Flags flags;

  auto* design = app.add_subcommand("design", "print the geometry as JSON");
  add_common(design, flags);
  auto* analyze = app.add_subcommand("analyze", "weights, windows and closed-form comparison");
  add_common(analyze, flags);
  auto* estimate = app.add_subcommand("estimate", "seeded correlogram peak-estimation trials");
  add_common(estimate, flags);
  add_signal(estimate, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const coprime::ExperimentConfig cfg = load(flags);
    if (*design) {
      const auto run = coprime::run_design(cfg);
      std::cout << run.report.dump(2) << '\n';
      return finish(run, flags, cfg, "geometry.json", false);
    }
    if (*analyze) return finish(coprime::run_analyze(cfg), flags, cfg, "analysis.json", true);
    return finish(coprime::run_estimate(cfg), flags, cfg, "peaks.json", true);
  } catch (const coprime::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
