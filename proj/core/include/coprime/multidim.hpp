#pragma once

// Separable multi-dimensional sampling patterns built as outer products of
// one-dimensional indicators, with their weights, windows and correlogram.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coprime/closedform.hpp"
#include "coprime/spectral.hpp"

namespace coprime {

/// Dense row-major array with a runtime shape.
template <typename T>
class NDArray {
 public:
  NDArray() = default;
  explicit NDArray(std::vector<std::size_t> shape, T fill = T{});

  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  std::size_t dims() const noexcept { return shape_.size(); }
  std::size_t size() const noexcept { return data_.size(); }

  std::size_t flat(std::span<const std::size_t> idx) const;
  std::vector<std::size_t> unflat(std::size_t flat) const;

  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }
  T& at(std::span<const std::size_t> idx) { return data_[flat(idx)]; }
  const T& at(std::span<const std::size_t> idx) const { return data_[flat(idx)]; }

  std::vector<T>& data() noexcept { return data_; }
  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const NDArray&, const NDArray&) = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<T> data_;
};

/// a (x) b: result(i..., j...) = a(i...) * b(j...).
template <typename T>
NDArray<T> outer_product(const NDArray<T>& a, const NDArray<T>& b);

/// One-dimensional array holding `values`.
template <typename T>
NDArray<T> as_ndarray(std::vector<T> values);

/// Binary indicator over one period.
struct Pattern1D {
  std::vector<std::uint8_t> indicator;
  std::string label;

  void validate() const;
  std::size_t period() const noexcept { return indicator.size(); }
  std::size_t ones() const noexcept;
  /// Positions with a sample, as an ElementSet.
  ElementSet support() const;
};

Pattern1D nyquist_pattern(std::size_t length);

/// Indicator with a one at every union position. Throws ConfigError when a
/// position falls outside [0, period).
Pattern1D pattern_from_union(const ElementSet& combined, std::size_t period,
                             std::string label = "union");

/// Outer product of 1D factors.
struct PatternND {
  std::vector<Pattern1D> factors;

  void validate() const;
  std::size_t dims() const noexcept { return factors.size(); }
  std::vector<std::size_t> shape() const;
  NDArray<std::uint8_t> indicator() const;
  /// Multi-indices of every sample, row-major order.
  std::vector<std::vector<Position>> points() const;
};

/// Appends one more factor: p^{eta} = p^{eta-1} (x) p^{1}.
PatternND extend(const PatternND& p, const Pattern1D& factor);

/// Integer weights over the lag box prod [-extent_i, extent_i].
struct WeightND {
  std::vector<Lag> extent;
  NDArray<std::int64_t> counts;

  std::int64_t at(std::span<const Lag> lag) const;
  std::int64_t total() const;

  friend bool operator==(const WeightND&, const WeightND&) = default;
};

/// Direct autocorrelation of the eta-D indicator.
WeightND weight_nd(const PatternND& p);

/// Outer product of the factors' 1D weight functions.
WeightND weight_outer(const PatternND& p);

/// Real window over a product frequency grid.
struct WindowND {
  FrequencyGrid grid;  // same along every axis
  NDArray<double> values;

  WindowND peak_normalized() const;
};

double max_abs_deviation(const WindowND& a, const WindowND& b);

/// Outer product of 1D windows. Throws ConfigError when their grids differ.
WindowND bias_nd(std::span<const BiasWindow> windows);

/// sum_l z(l) exp(-j pi f . l), evaluated axis by axis; real part.
WindowND simulated_bias_nd(const WeightND& z, const FrequencyGrid& grid);

// ---------------------------------------------------------------------------
// Estimation

/// Sum of exp(j (pi f . t + phi)) with per-snapshot uniform phases.
struct SignalModelND {
  std::vector<std::vector<double>> peaks;  // each of length eta, coordinates in [0, 1)
  std::vector<double> amplitudes;          // empty means all ones
  double noise_variance = 0.0;
  std::uint64_t seed = 1;

  void validate(std::size_t dims) const;
  double amplitude(std::size_t i) const { return amplitudes.empty() ? 1.0 : amplitudes.at(i); }
};

/// Snapshot k samples the pattern at t = p + k * period along every axis.
struct SnapshotSetND {
  std::size_t snapshots = 0;
  std::vector<std::vector<Position>> points;
  std::vector<std::vector<Complex>> samples;  // [snapshot][point]
};

SnapshotSetND sample_pattern_nd(const SignalModelND& model, const PatternND& pattern,
                                std::size_t snapshots);

/// Lag-averaged estimate over the weight box; zero at holes.
struct LagEstimateND {
  WeightND weights;
  NDArray<Complex> values;
};

LagEstimateND estimate_autocorrelation_nd(const SnapshotSetND& snaps, const WeightND& z);

struct SpectrumND {
  FrequencyGrid grid;
  NDArray<double> power;
};

SpectrumND correlogram_nd(const LagEstimateND& est, const FrequencyGrid& grid);

/// Strict local maxima against all 3^eta - 1 cyclic neighbours; the `count`
/// strongest, as frequency tuples in lexicographic order. Throws
/// PeakSearchError when fewer exist.
std::vector<std::vector<double>> find_peaks_nd(const SpectrumND& spec, std::size_t count);

/// Largest distance from a true peak to its nearest found peak, measured
/// per axis on the circle [0, 2) and taking the worst axis.
double worst_match_distance(const std::vector<std::vector<double>>& found,
                            const std::vector<std::vector<double>>& truth);

SpectrumND estimate_spectrum_nd(const PatternND& pattern, const SignalModelND& model,
                                std::size_t snapshots, const FrequencyGrid& grid);

}  // namespace coprime
