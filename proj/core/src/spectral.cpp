#include "coprime/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

namespace coprime {

void SignalModel::validate() const {
  if (peaks.empty()) throw ConfigError("signal model needs at least one peak");
  for (double f : peaks) {
    if (!(f > 0.0 && f < 1.0)) throw ConfigError("peak frequencies must lie strictly inside (0, 1)");
  }
  if (!amplitudes.empty()) {
    if (amplitudes.size() != peaks.size()) {
      throw ConfigError("amplitude list must match the peak list");
    }
    for (double a : amplitudes) {
      if (!(a > 0.0)) throw ConfigError("amplitudes must be positive");
    }
  }
  if (!(noise_variance >= 0.0)) throw ConfigError("noise variance must be non-negative");
}

std::vector<Complex> generate_signal(const SignalModel& model, std::size_t period,
                                     std::size_t snapshots) {
  model.validate();
  if (period == 0 || snapshots == 0) throw ConfigError("period and snapshot count must be >= 1");
  std::mt19937_64 rng(model.seed);
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> noise_dist(0.0, std::sqrt(model.noise_variance / 2.0));

  std::vector<Complex> x(period * snapshots);
  std::vector<double> phases(model.peaks.size());
  for (std::size_t snap = 0; snap < snapshots; ++snap) {
    for (double& p : phases) p = phase_dist(rng);
    for (std::size_t i = 0; i < period; ++i) {
      const std::size_t t = snap * period + i;
      Complex v{0.0, 0.0};
      for (std::size_t k = 0; k < model.peaks.size(); ++k) {
        v += model.amplitude(k) *
             std::polar(1.0, std::numbers::pi * (model.peaks[k] * static_cast<double>(t)) + phases[k]);
      }
      if (model.noise_variance > 0.0) v += Complex{noise_dist(rng), noise_dist(rng)};
      x[t] = v;
    }
  }
  return x;
}

SnapshotSet sample_pattern(const std::vector<Complex>& signal, const ElementSet& pattern,
                           std::size_t period, std::size_t snapshots) {
  if (pattern.empty()) throw ConfigError("sampling pattern is empty");
  if (snapshots == 0) throw ConfigError("need at least one snapshot");
  if (pattern.front() < 0 || static_cast<std::size_t>(pattern.back()) >= period) {
    throw ConfigError("pattern positions must lie inside one period");
  }
  if (signal.size() < period * snapshots) {
    throw ConfigError("signal is shorter than snapshots * period");
  }
  SnapshotSet out;
  out.snapshots = snapshots;
  out.period = period;
  out.positions = pattern.positions();
  out.samples.resize(snapshots);
  for (std::size_t k = 0; k < snapshots; ++k) {
    auto& row = out.samples[k];
    row.reserve(pattern.size());
    for (Position p : pattern.positions()) row.push_back(signal[static_cast<std::size_t>(p) + k * period]);
  }
  return out;
}

Complex LagEstimate::at(Lag l) const noexcept {
  const Lag ext = weights.lmax();
  if (values.empty() || l < -ext || l > ext) return {};
  return values[static_cast<std::size_t>(l + ext)];
}

LagEstimate estimate_autocorrelation(const SnapshotSet& snaps, const WeightFunction& z) {
  if (snaps.snapshots == 0 || snaps.samples.size() != snaps.snapshots) {
    throw ConfigError("snapshot set is empty or inconsistent");
  }
  const auto& pos = snaps.positions;
  const Lag ext = z.lmax();
  const std::size_t width = static_cast<std::size_t>(2 * ext + 1);
  std::vector<Complex> acc(width);
  std::vector<std::int64_t> pairs(width, 0);
  auto slot = [&](Lag l) -> std::size_t {
    if (l < -ext || l > ext) throw ConfigError("weight function does not cover the sampled lags");
    return static_cast<std::size_t>(l + ext);
  };

  // Each unordered pair feeds l and -l together so r(-l) = conj(r(l)) exactly.
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const std::size_t d = slot(0);
    ++pairs[d];
    for (std::size_t j = i + 1; j < pos.size(); ++j) {
      ++pairs[slot(pos[i] - pos[j])];
      ++pairs[slot(pos[j] - pos[i])];
    }
  }
  for (std::size_t i = 0; i < width; ++i) {
    if (pairs[i] != z.at(static_cast<Lag>(i) - ext)) {
      throw ConfigError("weight function was not derived from the sampled pattern");
    }
  }

  for (const auto& x : snaps.samples) {
    for (std::size_t i = 0; i < pos.size(); ++i) {
      acc[slot(0)] += std::norm(x[i]);
      for (std::size_t j = i + 1; j < pos.size(); ++j) {
        const Complex prod = x[i] * std::conj(x[j]);
        acc[slot(pos[i] - pos[j])] += prod;
        acc[slot(pos[j] - pos[i])] += std::conj(prod);
      }
    }
  }

  LagEstimate est{z, std::vector<Complex>(width)};
  const double K = static_cast<double>(snaps.snapshots);
  for (std::size_t i = 0; i < width; ++i) {
    if (pairs[i] > 0) est.values[i] = acc[i] / (K * static_cast<double>(pairs[i]));
  }
  return est;
}

std::vector<Complex> correlogram_complex(const LagEstimate& est, const FrequencyGrid& grid) {
  grid.validate();
  const PhaseTable phase(grid.size);
  const std::vector<Lag> lags = est.weights.support();
  std::vector<Complex> out(grid.size);
  for (std::size_t k = 0; k < grid.size; ++k) {
    Complex v{0.0, 0.0};
    for (Lag l : lags) v += est.at(l) * phase(k, l);
    out[k] = v;
  }
  return out;
}

Spectrum correlogram(const LagEstimate& est, const FrequencyGrid& grid) {
  const auto c = correlogram_complex(est, grid);
  Spectrum s{grid, std::vector<double>(c.size())};
  std::transform(c.begin(), c.end(), s.power.begin(), [](Complex v) { return v.real(); });
  return s;
}

std::vector<double> local_maxima(const Spectrum& spec, const Band& band) {
  const std::size_t G = spec.power.size();
  if (G < 3) return {};
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < G; ++k) {
    const double f = spec.grid.at(k);
    if (f < band.lo || f >= band.hi) continue;
    const double v = spec.power[k];
    if (v > spec.power[(k + G - 1) % G] && v > spec.power[(k + 1) % G]) idx.push_back(k);
  }
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return spec.power[a] > spec.power[b]; });
  std::vector<double> out;
  out.reserve(idx.size());
  for (std::size_t k : idx) out.push_back(spec.grid.at(k));
  return out;
}

std::vector<double> find_peaks(const Spectrum& spec, std::size_t count, const Band& band) {
  if (count < 1) throw ConfigError("peak count must be >= 1");
  std::vector<double> all = local_maxima(spec, band);
  if (all.size() < count) {
    std::sort(all.begin(), all.end());
    throw PeakSearchError(count, std::move(all));
  }
  all.resize(count);
  std::sort(all.begin(), all.end());
  return all;
}

double peak_error(const std::vector<double>& found, const std::vector<double>& truth) {
  if (found.size() != truth.size() || found.empty()) {
    throw ConfigError("peak lists must be nonempty and of equal length");
  }
  std::vector<double> a = found, b = truth;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum / static_cast<double>(a.size());
}

std::uint64_t trial_seed(std::uint64_t base, std::size_t trial) noexcept {
  // splitmix64 finalizer over base + golden-ratio stride
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(trial) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Spectrum estimate_spectrum(const ElementSet& pattern, std::size_t period, const SignalModel& model,
                           std::size_t snapshots, const FrequencyGrid& grid) {
  const auto x = generate_signal(model, period, snapshots);
  const auto snaps = sample_pattern(x, pattern, period, snapshots);
  return correlogram(estimate_autocorrelation(snaps, weight_function(pattern)), grid);
}

namespace {

struct TrialResult {
  Spectrum spectrum;
  std::optional<std::vector<double>> peaks;
};

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
}

}  // namespace

TrialSummary run_peak_trials(const TrialSetup& setup, double tolerance) {
  setup.model.validate();
  if (setup.trials == 0) throw ConfigError("need at least one trial");
  std::vector<double> truth = setup.model.peaks;
  std::sort(truth.begin(), truth.end());

  std::vector<TrialResult> results(setup.trials);
  parallel_for(setup.trials, [&](std::size_t t) {
    SignalModel m = setup.model;
    m.seed = trial_seed(setup.model.seed, t);
    TrialResult r;
    r.spectrum = estimate_spectrum(setup.pattern, setup.period, m, setup.snapshots, setup.grid);
    auto maxima = local_maxima(r.spectrum, setup.band);
    if (maxima.size() >= truth.size()) {
      maxima.resize(truth.size());
      std::sort(maxima.begin(), maxima.end());
      r.peaks = std::move(maxima);
    }
    results[t] = std::move(r);
  });

  TrialSummary sum;
  sum.mean_spectrum = Spectrum{setup.grid, std::vector<double>(setup.grid.size, 0.0)};
  double err_total = 0;
  std::size_t counted = 0;
  for (const auto& r : results) {
    for (std::size_t k = 0; k < setup.grid.size; ++k) sum.mean_spectrum.power[k] += r.spectrum.power[k];
    if (!r.peaks) {
      ++sum.failed_trials;
      continue;
    }
    err_total += peak_error(*r.peaks, truth);
    ++counted;
    bool ok = true;
    for (std::size_t i = 0; i < truth.size(); ++i) ok = ok && std::abs((*r.peaks)[i] - truth[i]) <= tolerance;
    if (ok) ++sum.resolved_trials;
  }
  for (double& p : sum.mean_spectrum.power) p /= static_cast<double>(setup.trials);
  sum.mean_error = counted ? err_total / static_cast<double>(counted) : 0.0;
  return sum;
}

}  // namespace coprime
