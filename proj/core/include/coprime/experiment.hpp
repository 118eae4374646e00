#pragma once

// Experiment configuration and the design / analyze / estimate pipelines the
// command-line tool is built from. Every run returns a JSON report plus the
// text artifacts to write; nothing here touches the file system except
// write_artifacts.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "coprime/export.hpp"

namespace coprime {

enum class Family { apca, exsca, generalized, hybrid2d };

Family parse_family(const std::string& name);
std::string family_name(Family f);

struct ShiftRange {
  int first = 0;
  int last = 0;
};

/// "a:b" (inclusive) or a single integer.
ShiftRange parse_shift_range(const std::string& text);

inline constexpr std::size_t kDefaultSnapshots1D = 10;
inline constexpr std::size_t kDefaultSnapshots2D = 25;
inline constexpr std::size_t kDefaultGrid2D = 256;

struct ExperimentConfig {
  Family family = Family::apca;
  int M = 0;
  int N = 0;
  std::optional<int> shift;
  std::optional<ShiftRange> shifts;
  int sparsity = 2;
  bool displaced = false;
  std::vector<SubarraySpec> subarrays;   // generalized only
  std::string row_pattern = "nyquist";   // hybrid2d: nyquist | exsca

  // Default 1D peaks; parse_config switches to vertical 2D peaks for hybrid2d.
  std::vector<std::vector<double>> peaks{{0.1}, {0.3}, {0.6}};
  std::vector<double> amplitudes;
  double noise_variance = 0.0;
  std::optional<std::size_t> snapshots;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::optional<std::size_t> grid;
  double tolerance = 0.02;
  Band band{0.0, 1.0};
  bool compare_prototype = false;
  std::optional<std::string> output_dir;

  std::vector<int> shift_list() const;
  std::size_t snapshot_count() const;
  FrequencyGrid frequency_grid() const;
  void validate() const;
  /// Peak shapes match the family's dimension; checked by run_estimate.
  void validate_signal() const;
};

/// Builds a config from JSON; unknown keys and ill-typed values throw
/// ConfigError.
ExperimentConfig parse_config(const Json& j);

/// Flat merge: keys of `overrides` replace those of `base`.
Json merge_config(Json base, const Json& overrides);

Json config_to_json(const ExperimentConfig& cfg);

/// Explicit flag, then config, then $COPRIME_OUT_DIR, then ./coprime_out.
std::filesystem::path resolve_output_dir(const std::optional<std::string>& flag,
                                         const ExperimentConfig& cfg, const char* env_value);

/// Geometry of the configured family at one shift.
struct Design {
  std::string family;
  Json params;
  Layout layout;
  std::optional<PivotIndex> pivot;
  std::size_t period = 0;
};

Design build_design(const ExperimentConfig& cfg, int shift);

/// Row and column patterns of the 2D hybrid at one shift.
PatternND build_pattern_2d(const ExperimentConfig& cfg, int shift);

struct Artifact {
  std::string name;
  std::string text;
};

struct RunResult {
  Json report;
  std::vector<Artifact> files;
  /// Some shift hit coincident subarray elements, so the closed form did
  /// not apply.
  bool inapplicable = false;
};

RunResult run_design(const ExperimentConfig& cfg);
RunResult run_analyze(const ExperimentConfig& cfg);
RunResult run_estimate(const ExperimentConfig& cfg);

/// Writes every artifact plus `report_name` (the report) under `dir`.
void write_artifacts(const std::filesystem::path& dir, const RunResult& run,
                     const std::string& report_name);

}  // namespace coprime
