#pragma once

// Synthetic signals, sub-Nyquist sampling at pattern positions, lag-averaged
// autocorrelation and correlogram spectra.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "coprime/diffset.hpp"
#include "coprime/frequency.hpp"
#include "coprime/geometry.hpp"

namespace coprime {

using Complex = std::complex<double>;

/// Sum of unit complex exponentials exp(j (pi f_k t + phi)) with phases
/// redrawn uniformly per snapshot, plus optional circular Gaussian noise.
struct SignalModel {
  std::vector<double> peaks;       // normalized, strictly inside (0, 1)
  std::vector<double> amplitudes;  // empty means all ones
  double noise_variance = 0.0;
  std::uint64_t seed = 1;

  void validate() const;
  double amplitude(std::size_t i) const { return amplitudes.empty() ? 1.0 : amplitudes.at(i); }
};

/// Nyquist-rate samples for `snapshots` consecutive periods of length
/// `period`; snapshot j covers [j period, (j+1) period).
std::vector<Complex> generate_signal(const SignalModel& model, std::size_t period,
                                     std::size_t snapshots);

/// Samples of each snapshot at the pattern positions.
struct SnapshotSet {
  std::size_t snapshots = 0;
  std::size_t period = 0;
  std::vector<Position> positions;
  std::vector<std::vector<Complex>> samples;  // [snapshot][position index]
};

/// Picks signal[p + k period] for every pattern position p and snapshot k.
SnapshotSet sample_pattern(const std::vector<Complex>& signal, const ElementSet& pattern,
                           std::size_t period, std::size_t snapshots);

/// Per-lag averaged autocorrelation over [-lmax, lmax]; zero at holes.
struct LagEstimate {
  WeightFunction weights;
  std::vector<Complex> values;

  Complex at(Lag l) const noexcept;
  Lag lmax() const noexcept { return weights.lmax(); }
};

/// r(l) = 1 / (K z(l)) sum_k sum_{a - b = l} x_k(a) conj(x_k(b)).
/// Throws ConfigError when z does not describe the sampled positions.
LagEstimate estimate_autocorrelation(const SnapshotSet& snaps, const WeightFunction& z);

struct Spectrum {
  FrequencyGrid grid;
  std::vector<double> power;
};

/// Re sum_l r(l) exp(-j pi f l) over available lags.
Spectrum correlogram(const LagEstimate& est, const FrequencyGrid& grid = {});

/// Same sum before the real projection.
std::vector<Complex> correlogram_complex(const LagEstimate& est, const FrequencyGrid& grid = {});

/// Restricts the peak search to lo <= f < hi.
struct Band {
  double lo = 0.0;
  double hi = 2.0;
};

/// Strict local maxima (cyclic neighbours) inside the band, as frequencies
/// in descending order of power.
std::vector<double> local_maxima(const Spectrum& spec, const Band& band = {});

/// The `count` largest strict local maxima, sorted ascending. Throws
/// PeakSearchError when fewer exist.
std::vector<double> find_peaks(const Spectrum& spec, std::size_t count, const Band& band = {});

/// Mean absolute difference of two equally long sorted lists.
double peak_error(const std::vector<double>& found, const std::vector<double>& truth);

// ---------------------------------------------------------------------------
// Seeded Monte-Carlo trials

struct TrialSetup {
  ElementSet pattern;
  std::size_t period = 0;
  SignalModel model;
  std::size_t snapshots = 10;
  std::size_t trials = 100;
  FrequencyGrid grid{};
  Band band{0.0, 1.0};
};

struct TrialSummary {
  double mean_error = 0.0;         // over trials that found enough peaks
  std::size_t failed_trials = 0;   // fewer local maxima than true peaks
  std::size_t resolved_trials = 0; // every peak within `tolerance`
  Spectrum mean_spectrum;
};

/// Seed of trial t derived from the model seed; identical across runs.
std::uint64_t trial_seed(std::uint64_t base, std::size_t trial) noexcept;

/// Runs independent trials (in parallel when threads are available) and
/// reduces them in trial order, so results do not depend on scheduling.
TrialSummary run_peak_trials(const TrialSetup& setup, double tolerance = 0.02);

/// One full estimate: generate, sample, estimate, transform.
Spectrum estimate_spectrum(const ElementSet& pattern, std::size_t period, const SignalModel& model,
                           std::size_t snapshots, const FrequencyGrid& grid = {});

}  // namespace coprime
