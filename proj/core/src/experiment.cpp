#include "coprime/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace coprime {

namespace {

template <typename T>
T get_as(const Json& v, const char* key) {
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

int get_int(const Json& v, const char* key) {
  if (!v.is_number_integer()) throw ConfigError(std::string("config key '") + key + "' must be an integer");
  return v.get<int>();
}

std::size_t get_count(const Json& v, const char* key) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(std::string("config key '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double get_real(const Json& v, const char* key) {
  if (!v.is_number()) throw ConfigError(std::string("config key '") + key + "' must be a number");
  return v.get<double>();
}

SubarraySpec parse_subarray(const Json& j) {
  if (!j.is_object()) throw ConfigError("each subarray must be an object");
  SubarraySpec s;
  for (const auto& [key, v] : j.items()) {
    if (key == "count") s.count = get_int(v, "count");
    else if (key == "spacing_base") s.spacing_base = get_int(v, "spacing_base");
    else if (key == "compression") s.compression = get_int(v, "compression");
    else if (key == "sparsity") s.sparsity = get_int(v, "sparsity");
    else if (key == "periods") s.periods = get_int(v, "periods");
    else if (key == "shift") s.shift = get_int(v, "shift");
    else throw ConfigError("unknown subarray key '" + key + "'");
  }
  return s;
}

Json subarray_json(const SubarraySpec& s) {
  return Json{{"count", s.count},     {"spacing_base", s.spacing_base}, {"compression", s.compression},
              {"sparsity", s.sparsity}, {"periods", s.periods},         {"shift", s.shift}};
}

std::string suffix(int s) { return "_s" + std::to_string(s); }

template <typename Fn>
std::string render(Fn&& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

Json maybe_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> try_relative_amplitude(const BiasWindow& w) {
  try {
    return relative_amplitude(w);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Closed-form dispatch for one shift

struct ClosedForm {
  std::string route;
  std::optional<WeightFunction> weights;
  std::optional<BiasWindow> window;
  std::vector<Overlap> overlaps;
};

ClosedForm closed_form_generalized(const GeneralizedConfig& g, const FrequencyGrid& grid) {
  ClosedForm c{"generalized", {}, {}, {}};
  try {
    c.weights = weight_closed_generalized(g);
    c.window = bias_closed_generalized(g, {grid});
  } catch (const ClosedFormInapplicable& e) {
    c.overlaps = e.overlaps();
    c.weights.reset();
    c.window.reset();
  }
  return c;
}

ClosedForm closed_form_for(const ExperimentConfig& cfg, int s, const FrequencyGrid& grid) {
  if (cfg.family == Family::generalized) {
    GeneralizedConfig g{cfg.subarrays};
    g.subarrays.back().shift = s;
    return closed_form_generalized(g, grid);
  }
  const CoPrimePair pair(cfg.M, cfg.N);
  if (cfg.family == Family::apca) {
    if (cfg.displaced) return closed_form_generalized(to_generalized(ApcaConfig{pair, s, true}), grid);
    // The E = 2 array with shift 2s carries the same weights on even lags.
    const ExscaConfig twin{pair, 2 * s, 2, false};
    const auto pivot = pivot_location(twin);
    ClosedForm c{"apca_via_exsca", weight_closed_exsca(pair, 2 * s, pivot).decimate(2), {}, {}};
    BiasWindow wide = bias_closed_exsca(pair, 2 * s, pivot, {FrequencyGrid{2 * grid.size}});
    wide.grid = grid;
    wide.values.resize(grid.size);
    c.window = std::move(wide);
    return c;
  }
  const ExscaConfig ex{pair, s, cfg.sparsity, cfg.displaced};
  if (cfg.sparsity == 2 && !cfg.displaced) {
    const auto pivot = pivot_location(ex);
    return {"exsca", weight_closed_exsca(pair, s, pivot), bias_closed_exsca(pair, s, pivot, {grid}), {}};
  }
  return closed_form_generalized(to_generalized(ex), grid);
}

std::int64_t max_weight_deviation(const WeightFunction& a, const WeightFunction& b) {
  const Lag ext = std::max(a.lmax(), b.lmax());
  std::int64_t m = 0;
  for (Lag l = -ext; l <= ext; ++l) m = std::max(m, std::abs(a.at(l) - b.at(l)));
  return m;
}

// ---------------------------------------------------------------------------

Json analyze_1d(const ExperimentConfig& cfg, int s, RunResult& run) {
  const FrequencyGrid grid = cfg.frequency_grid();
  const Design d = build_design(cfg, s);
  const WeightFunction z = weight_function(d.layout.combined);
  const LagStatistics stats = lag_statistics(z);
  const BiasWindow sim = simulated_bias(z, {grid});

  Json e;
  e["shift"] = s;
  e["elements"] = d.layout.combined.size();
  e["unique_count"] = stats.unique_count;
  e["continuous_range"] = continuous_range(z);
  e["holes"] = stats.holes.size();
  e["lag_span"] = Json::array({stats.min_lag, stats.max_lag});
  e["relative_amplitude"] = maybe_number(try_relative_amplitude(sim));

  const ClosedForm c = closed_form_for(cfg, s, grid);
  Json cj;
  cj["route"] = c.route;
  if (c.weights) {
    cj["applicable"] = true;
    cj["weights_match"] = *c.weights == z;
    cj["weights_max_abs_dev"] = max_weight_deviation(*c.weights, z);
    cj["window_max_abs_dev"] = max_abs_deviation(c.window->peak_normalized(), sim.peak_normalized());
    cj["relative_amplitude"] = maybe_number(try_relative_amplitude(*c.window));
    run.files.push_back({"window_closed" + suffix(s) + ".csv",
                         render([&](std::ostream& os) { write_window_csv(os, *c.window); })});
  } else {
    cj["applicable"] = false;
    cj["overlaps"] = overlaps_json(c.overlaps);
    run.inapplicable = true;
  }
  e["closed_form"] = std::move(cj);

  run.files.push_back({"weights" + suffix(s) + ".csv",
                       render([&](std::ostream& os) { write_weights_csv(os, z); })});
  run.files.push_back({"window" + suffix(s) + ".csv",
                       render([&](std::ostream& os) { write_window_csv(os, sim); })});
  return e;
}

Json analyze_2d(const ExperimentConfig& cfg, int s, RunResult& run) {
  const FrequencyGrid grid = cfg.frequency_grid();
  const PatternND p = build_pattern_2d(cfg, s);
  const WeightND direct = weight_nd(p);
  const WeightND outer = weight_outer(p);

  std::vector<BiasWindow> factors;
  for (const auto& f : p.factors) factors.push_back(simulated_bias(weight_function(f.support()), {grid}));
  const WindowND theory = bias_nd(factors).peak_normalized();
  const WindowND sim = simulated_bias_nd(direct, grid).peak_normalized();

  const std::size_t half = grid.size / 2;
  const std::vector<std::size_t> origin{0, 0}, image{half, half};

  Json e;
  e["shift"] = s;
  e["samples"] = p.points().size();
  e["weights_separable"] = direct == outer;
  e["window_max_abs_dev"] = max_abs_deviation(theory, sim);
  e["image_at_one_one"] = sim.values.at(image);
  e["value_at_origin"] = sim.values.at(origin);

  run.files.push_back({"weights2d" + suffix(s) + ".csv",
                       render([&](std::ostream& os) { write_weight_nd_csv(os, direct); })});
  run.files.push_back({"window2d" + suffix(s) + ".csv",
                       render([&](std::ostream& os) { write_grid_csv(os, sim.values); })});
  return e;
}

SignalModel model_1d(const ExperimentConfig& cfg) {
  SignalModel m;
  for (const auto& p : cfg.peaks) m.peaks.push_back(p.front());
  m.amplitudes = cfg.amplitudes;
  m.noise_variance = cfg.noise_variance;
  m.seed = cfg.seed;
  return m;
}

Json trials_json(const TrialSummary& sum, std::size_t trials) {
  Json j;
  // No trial found enough peaks: there is no error to average.
  j["mean_error"] = sum.failed_trials < trials ? Json(sum.mean_error) : Json(nullptr);
  j["failed_trials"] = sum.failed_trials;
  j["resolved_trials"] = sum.resolved_trials;
  j["resolved_fraction"] = static_cast<double>(sum.resolved_trials) / static_cast<double>(trials);
  return j;
}

Json mean_peaks_json(const Spectrum& s, std::size_t count, const Band& band) {
  try {
    return Json(find_peaks(s, count, band));
  } catch (const PeakSearchError&) {
    return Json(nullptr);
  }
}

Json estimate_1d(const ExperimentConfig& cfg, int s, RunResult& run,
                 const std::optional<TrialSummary>& prototype) {
  const Design d = build_design(cfg, s);
  if (d.layout.combined.back() >= static_cast<Position>(d.period)) {
    throw ConfigError("pattern does not fit inside one snapshot period");
  }
  TrialSetup setup{d.layout.combined, d.period, model_1d(cfg), cfg.snapshot_count(), cfg.trials,
                   cfg.frequency_grid(), cfg.band};
  const TrialSummary sum = run_peak_trials(setup, cfg.tolerance);

  Json e;
  e["shift"] = s;
  e["period"] = d.period;
  e.update(trials_json(sum, cfg.trials));
  e["mean_spectrum_peaks"] = mean_peaks_json(sum.mean_spectrum, cfg.peaks.size(), cfg.band);
  if (prototype) {
    const double n = static_cast<double>(cfg.trials);
    const double ours = static_cast<double>(sum.resolved_trials) / n;
    const double theirs = static_cast<double>(prototype->resolved_trials) / n;
    e["resolution"] = Json{{"resolved_fraction", ours},
                           {"prototype_resolved_fraction", theirs},
                           {"prototype_failed_fraction", static_cast<double>(prototype->failed_trials) / n},
                           {"resolves_where_prototype_fails", ours >= 0.9 && theirs <= 0.1}};
  }
  run.files.push_back({"spectrum" + suffix(s) + ".csv",
                       render([&](std::ostream& os) { write_spectrum_csv(os, sum.mean_spectrum); })});
  return e;
}

Json estimate_2d(const ExperimentConfig& cfg, int s, RunResult& run) {
  const FrequencyGrid grid = cfg.frequency_grid();
  const PatternND p = build_pattern_2d(cfg, s);
  const WeightND z = weight_nd(p);

  SignalModelND model{cfg.peaks, cfg.amplitudes, cfg.noise_variance, cfg.seed};
  model.validate(2);
  SpectrumND mean{grid, NDArray<double>({grid.size, grid.size}, 0.0)};
  std::size_t failed = 0, resolved = 0;
  double dist_total = 0;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    SignalModelND m = model;
    m.seed = trial_seed(cfg.seed, t);
    const auto snaps = sample_pattern_nd(m, p, cfg.snapshot_count());
    const SpectrumND spec = correlogram_nd(estimate_autocorrelation_nd(snaps, z), grid);
    for (std::size_t i = 0; i < spec.power.size(); ++i) mean.power[i] += spec.power[i];
    try {
      const double dist = worst_match_distance(find_peaks_nd(spec, cfg.peaks.size()), cfg.peaks);
      dist_total += dist;
      if (dist <= cfg.tolerance) ++resolved;
    } catch (const PeakSearchError&) {
      ++failed;
    }
  }
  for (double& v : mean.power.data()) v /= static_cast<double>(cfg.trials);

  Json e;
  e["shift"] = s;
  e["failed_trials"] = failed;
  e["resolved_trials"] = resolved;
  e["mean_worst_distance"] =
      cfg.trials > failed ? Json(dist_total / static_cast<double>(cfg.trials - failed)) : Json(nullptr);
  try {
    const auto peaks = find_peaks_nd(mean, cfg.peaks.size());
    e["mean_spectrum_peaks"] = peaks;
    e["mean_spectrum_worst_distance"] = worst_match_distance(peaks, cfg.peaks);
  } catch (const PeakSearchError&) {
    e["mean_spectrum_peaks"] = nullptr;
    e["mean_spectrum_worst_distance"] = nullptr;
  }
  run.files.push_back({"spectrum2d" + suffix(s) + ".csv",
                       render([&](std::ostream& os) { write_grid_csv(os, mean.power); })});
  return e;
}

Json run_header(const ExperimentConfig& cfg) {
  Json r;
  r["config"] = config_to_json(cfg);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

Family parse_family(const std::string& name) {
  if (name == "apca") return Family::apca;
  if (name == "exsca") return Family::exsca;
  if (name == "generalized") return Family::generalized;
  if (name == "hybrid2d") return Family::hybrid2d;
  throw ConfigError("unknown family '" + name + "' (expected apca, exsca, generalized or hybrid2d)");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::apca: return "apca";
    case Family::exsca: return "exsca";
    case Family::generalized: return "generalized";
    case Family::hybrid2d: return "hybrid2d";
  }
  return "unknown";
}

ShiftRange parse_shift_range(const std::string& text) {
  auto parse_int = [&](std::string_view sv) {
    int v = 0;
    const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
    if (res.ec != std::errc{} || res.ptr != sv.data() + sv.size()) {
      throw ConfigError("bad shift range '" + text + "'");
    }
    return v;
  };
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const int v = parse_int(text);
    return {v, v};
  }
  const std::string_view sv(text);
  ShiftRange r{parse_int(sv.substr(0, colon)), parse_int(sv.substr(colon + 1))};
  if (r.first > r.last) throw ConfigError("shift range '" + text + "' is empty");
  return r;
}

std::vector<int> ExperimentConfig::shift_list() const {
  if (shifts) {
    std::vector<int> out;
    for (int s = shifts->first; s <= shifts->last; ++s) out.push_back(s);
    return out;
  }
  if (shift) return {*shift};
  if (family == Family::generalized && !subarrays.empty()) return {subarrays.back().shift};
  return {0};
}

std::size_t ExperimentConfig::snapshot_count() const {
  return snapshots.value_or(family == Family::hybrid2d ? kDefaultSnapshots2D : kDefaultSnapshots1D);
}

FrequencyGrid ExperimentConfig::frequency_grid() const {
  return FrequencyGrid{grid.value_or(family == Family::hybrid2d ? kDefaultGrid2D : kDefaultGridSize)};
}

void ExperimentConfig::validate() const {
  if (family == Family::generalized) {
    GeneralizedConfig{subarrays}.validate();
  } else {
    if (M == 0 || N == 0) throw ConfigError("both -M and -N are required for this family");
    CoPrimePair pair(M, N);
    if (family != Family::apca && sparsity < 1) throw ConfigError("sparsity must be >= 1");
    if (family == Family::hybrid2d && row_pattern != "nyquist" && row_pattern != "exsca") {
      throw ConfigError("row_pattern must be nyquist or exsca");
    }
  }
  if (shifts && shifts->first > shifts->last) throw ConfigError("shift range is empty");
  for (int s : shift_list()) build_design(*this, s);

  if (trials == 0) throw ConfigError("trials must be >= 1");
  if (snapshot_count() == 0) throw ConfigError("snapshots must be >= 1");
  frequency_grid().validate();
  if (!(tolerance > 0)) throw ConfigError("tolerance must be positive");
  if (!(band.lo >= 0 && band.lo < band.hi && band.hi <= 2)) throw ConfigError("band must satisfy 0 <= lo < hi <= 2");
  if (compare_prototype && family != Family::apca && family != Family::exsca) {
    throw ConfigError("compare_prototype needs the apca or exsca family");
  }
}

void ExperimentConfig::validate_signal() const {
  const std::size_t dims = family == Family::hybrid2d ? 2 : 1;
  if (peaks.empty()) throw ConfigError("at least one peak is required");
  for (const auto& p : peaks) {
    if (p.size() != dims) {
      throw ConfigError(dims == 1 ? "peaks must be plain numbers" : "hybrid2d peaks must be [f1, f2] pairs");
    }
  }
}

ExperimentConfig parse_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "family") c.family = parse_family(get_as<std::string>(v, "family"));
    else if (key == "M") c.M = get_int(v, "M");
    else if (key == "N") c.N = get_int(v, "N");
    else if (key == "shift") c.shift = get_int(v, "shift");
    else if (key == "shifts") {
      if (v.is_string()) c.shifts = parse_shift_range(v.get<std::string>());
      else if (v.is_array() && v.size() == 2) c.shifts = ShiftRange{get_int(v[0], "shifts"), get_int(v[1], "shifts")};
      else throw ConfigError("shifts must be \"a:b\" or [a, b]");
    } else if (key == "sparsity") c.sparsity = get_int(v, "sparsity");
    else if (key == "displaced") c.displaced = get_as<bool>(v, "displaced");
    else if (key == "subarrays") {
      if (!v.is_array()) throw ConfigError("subarrays must be an array");
      c.subarrays.clear();
      for (const auto& s : v) c.subarrays.push_back(parse_subarray(s));
    } else if (key == "row_pattern") c.row_pattern = get_as<std::string>(v, "row_pattern");
    else if (key == "peaks") {
      if (!v.is_array()) throw ConfigError("peaks must be an array");
      c.peaks.clear();
      for (const auto& p : v) {
        if (p.is_number()) c.peaks.push_back({p.get<double>()});
        else if (p.is_array()) {
          std::vector<double> t;
          for (const auto& x : p) t.push_back(get_real(x, "peaks"));
          c.peaks.push_back(std::move(t));
        } else throw ConfigError("peaks entries must be numbers or arrays");
      }
    } else if (key == "amplitudes") c.amplitudes = get_as<std::vector<double>>(v, "amplitudes");
    else if (key == "noise_variance") c.noise_variance = get_real(v, "noise_variance");
    else if (key == "snapshots") c.snapshots = get_count(v, "snapshots");
    else if (key == "trials") c.trials = get_count(v, "trials");
    else if (key == "seed") {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        throw ConfigError("seed must be a non-negative integer");
      }
      c.seed = v.get<std::uint64_t>();
    }
    else if (key == "grid") c.grid = get_count(v, "grid");
    else if (key == "tolerance") c.tolerance = get_real(v, "tolerance");
    else if (key == "band") {
      if (!v.is_array() || v.size() != 2) throw ConfigError("band must be [lo, hi]");
      c.band = Band{get_real(v[0], "band"), get_real(v[1], "band")};
    } else if (key == "compare_prototype") c.compare_prototype = get_as<bool>(v, "compare_prototype");
    else if (key == "output_dir") c.output_dir = get_as<std::string>(v, "output_dir");
    else throw ConfigError("unknown config key '" + key + "'");
  }
  if (c.family == Family::hybrid2d && !j.contains("peaks")) c.peaks = {{0.1, 0.0}, {0.3, 0.0}, {0.6, 0.0}};
  c.validate();
  return c;
}

Json merge_config(Json base, const Json& overrides) {
  if (base.is_null()) base = Json::object();
  if (!base.is_object() || !overrides.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, v] : overrides.items()) base[key] = v;
  return base;
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["family"] = family_name(c.family);
  if (c.family == Family::generalized) {
    Json subs = Json::array();
    for (const auto& s : c.subarrays) subs.push_back(subarray_json(s));
    j["subarrays"] = std::move(subs);
  } else {
    j["M"] = c.M;
    j["N"] = c.N;
    if (c.family != Family::apca) j["sparsity"] = c.sparsity;
    j["displaced"] = c.displaced;
  }
  if (c.family == Family::hybrid2d) j["row_pattern"] = c.row_pattern;
  const std::vector<int> shifts = c.shift_list();
  j["shifts"] = std::to_string(shifts.front()) + ":" + std::to_string(shifts.back());
  Json peaks = Json::array();
  for (const auto& p : c.peaks) peaks.push_back(p.size() == 1 ? Json(p.front()) : Json(p));
  j["peaks"] = std::move(peaks);
  if (!c.amplitudes.empty()) j["amplitudes"] = c.amplitudes;
  j["noise_variance"] = c.noise_variance;
  j["snapshots"] = c.snapshot_count();
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["grid"] = c.frequency_grid().size;
  j["tolerance"] = c.tolerance;
  j["band"] = Json::array({c.band.lo, c.band.hi});
  j["compare_prototype"] = c.compare_prototype;
  return j;
}

std::filesystem::path resolve_output_dir(const std::optional<std::string>& flag,
                                         const ExperimentConfig& cfg, const char* env_value) {
  if (flag && !flag->empty()) return *flag;
  if (cfg.output_dir && !cfg.output_dir->empty()) return *cfg.output_dir;
  if (env_value && *env_value) return env_value;
  return "coprime_out";
}

Design build_design(const ExperimentConfig& cfg, int s) {
  Design d;
  d.family = family_name(cfg.family);
  if (cfg.family == Family::generalized) {
    GeneralizedConfig g{cfg.subarrays};
    if (g.subarrays.empty()) throw ConfigError("generalized family needs subarrays");
    g.subarrays.back().shift = s;
    d.layout = positions_generalized(g);
    Json subs = Json::array();
    for (const auto& sub : g.subarrays) subs.push_back(subarray_json(sub));
    d.params["subarrays"] = std::move(subs);
    d.period = static_cast<std::size_t>(d.layout.combined.back()) + 1;
    return d;
  }
  const CoPrimePair pair(cfg.M, cfg.N);
  d.params["M"] = cfg.M;
  d.params["N"] = cfg.N;
  std::size_t base_period = 0;
  if (cfg.family == Family::apca) {
    const ApcaConfig a{pair, s, cfg.displaced};
    d.layout = positions_apca(a);
    d.pivot = pivot_location(a);
    base_period = static_cast<std::size_t>(cfg.M) * static_cast<std::size_t>(cfg.N);
  } else {
    const ExscaConfig e{pair, s, cfg.sparsity, cfg.displaced};
    d.layout = positions_exsca(e);
    d.pivot = pivot_location(e);
    d.params["sparsity"] = cfg.sparsity;
    base_period = static_cast<std::size_t>(cfg.sparsity) * static_cast<std::size_t>(cfg.M) *
                  static_cast<std::size_t>(cfg.N);
  }
  d.params["shift"] = s;
  d.params["displaced"] = cfg.displaced;
  d.period = std::max(base_period, static_cast<std::size_t>(d.layout.combined.back()) + 1);
  return d;
}

PatternND build_pattern_2d(const ExperimentConfig& cfg, int shift) {
  if (cfg.family != Family::hybrid2d) throw ConfigError("2D patterns need the hybrid2d family");
  const Design d = build_design(cfg, shift);
  const Pattern1D col = pattern_from_union(d.layout.combined, d.period, "exsca");
  const Pattern1D row = cfg.row_pattern == "exsca" ? col : nyquist_pattern(d.period);
  return PatternND{{row, col}};
}

RunResult run_design(const ExperimentConfig& cfg) {
  cfg.validate();
  RunResult run;
  Json designs = Json::array();
  for (int s : cfg.shift_list()) {
    const Design d = build_design(cfg, s);
    Json g = geometry_json(d.family, d.params, d.layout, d.pivot);
    g["period"] = d.period;
    if (!g["overlaps"].empty() && cfg.family == Family::generalized) run.inapplicable = true;
    designs.push_back(std::move(g));
  }
  run.report = designs.size() == 1 ? designs.front() : Json{{"designs", designs}};
  return run;
}

RunResult run_analyze(const ExperimentConfig& cfg) {
  cfg.validate();
  RunResult run;
  run.report = run_header(cfg);
  Json entries = Json::array();
  Json inapplicable = Json::array();
  for (int s : cfg.shift_list()) {
    if (cfg.family == Family::hybrid2d) {
      entries.push_back(analyze_2d(cfg, s, run));
      continue;
    }
    const bool before = run.inapplicable;
    run.inapplicable = false;
    entries.push_back(analyze_1d(cfg, s, run));
    if (run.inapplicable) inapplicable.push_back(s);
    run.inapplicable = before || run.inapplicable;
  }
  run.report["results"] = std::move(entries);
  if (cfg.family != Family::hybrid2d) run.report["inapplicable_shifts"] = std::move(inapplicable);
  return run;
}

RunResult run_estimate(const ExperimentConfig& cfg) {
  cfg.validate();
  cfg.validate_signal();
  RunResult run;
  run.report = run_header(cfg);
  Json entries = Json::array();

  std::optional<TrialSummary> prototype;
  if (cfg.compare_prototype) {
    const Layout proto = positions_apca(ApcaConfig{CoPrimePair(cfg.M, cfg.N), 0, false});
    TrialSetup setup{proto.combined, static_cast<std::size_t>(cfg.M * cfg.N), model_1d(cfg),
                     cfg.snapshot_count(), cfg.trials, cfg.frequency_grid(), cfg.band};
    prototype = run_peak_trials(setup, cfg.tolerance);
    Json pj = trials_json(*prototype, cfg.trials);
    pj["mean_spectrum_peaks"] = mean_peaks_json(prototype->mean_spectrum, cfg.peaks.size(), cfg.band);
    run.report["prototype"] = std::move(pj);
    run.files.push_back({"spectrum_prototype.csv", render([&](std::ostream& os) {
                           write_spectrum_csv(os, prototype->mean_spectrum);
                         })});
  }
  for (int s : cfg.shift_list()) {
    entries.push_back(cfg.family == Family::hybrid2d ? estimate_2d(cfg, s, run)
                                                     : estimate_1d(cfg, s, run, prototype));
  }
  run.report["results"] = std::move(entries);
  return run;
}

void write_artifacts(const std::filesystem::path& dir, const RunResult& run,
                     const std::string& report_name) {
  std::filesystem::create_directories(dir);
  for (const auto& f : run.files) write_file(dir / f.name, f.text);
  write_file(dir / report_name, run.report.dump(2) + "\n");
}

}  // namespace coprime
