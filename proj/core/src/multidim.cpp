#include "coprime/multidim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

namespace coprime {

template <typename T>
NDArray<T>::NDArray(std::vector<std::size_t> shape, T fill) : shape_(std::move(shape)) {
  std::size_t n = 1;
  for (std::size_t s : shape_) n *= s;
  data_.assign(n, fill);
}

template <typename T>
std::size_t NDArray<T>::flat(std::span<const std::size_t> idx) const {
  if (idx.size() != shape_.size()) throw std::out_of_range("index rank mismatch");
  std::size_t f = 0;
  for (std::size_t d = 0; d < shape_.size(); ++d) {
    if (idx[d] >= shape_[d]) throw std::out_of_range("index outside array shape");
    f = f * shape_[d] + idx[d];
  }
  return f;
}

template <typename T>
std::vector<std::size_t> NDArray<T>::unflat(std::size_t flat) const {
  std::vector<std::size_t> idx(shape_.size());
  for (std::size_t d = shape_.size(); d-- > 0;) {
    idx[d] = flat % shape_[d];
    flat /= shape_[d];
  }
  return idx;
}

template <typename T>
NDArray<T> outer_product(const NDArray<T>& a, const NDArray<T>& b) {
  std::vector<std::size_t> shape = a.shape();
  shape.insert(shape.end(), b.shape().begin(), b.shape().end());
  NDArray<T> out(std::move(shape));
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < nb; ++j) out[i * nb + j] = static_cast<T>(a[i] * b[j]);
  }
  return out;
}

template <typename T>
NDArray<T> as_ndarray(std::vector<T> values) {
  NDArray<T> out({values.size()});
  out.data() = std::move(values);
  return out;
}

template class NDArray<std::uint8_t>;
template class NDArray<std::int64_t>;
template class NDArray<double>;
template class NDArray<Complex>;
template NDArray<std::uint8_t> outer_product(const NDArray<std::uint8_t>&, const NDArray<std::uint8_t>&);
template NDArray<std::int64_t> outer_product(const NDArray<std::int64_t>&, const NDArray<std::int64_t>&);
template NDArray<double> outer_product(const NDArray<double>&, const NDArray<double>&);
template NDArray<std::uint8_t> as_ndarray(std::vector<std::uint8_t>);
template NDArray<std::int64_t> as_ndarray(std::vector<std::int64_t>);
template NDArray<double> as_ndarray(std::vector<double>);

// ---------------------------------------------------------------------------

void Pattern1D::validate() const {
  if (indicator.empty()) throw ConfigError("pattern period must be >= 1");
  for (auto v : indicator) {
    if (v > 1) throw ConfigError("pattern indicator must be binary");
  }
  if (ones() == 0) throw ConfigError("pattern has no samples");
}

std::size_t Pattern1D::ones() const noexcept {
  return static_cast<std::size_t>(std::count(indicator.begin(), indicator.end(), 1));
}

ElementSet Pattern1D::support() const {
  std::vector<Position> pos;
  for (std::size_t i = 0; i < indicator.size(); ++i) {
    if (indicator[i]) pos.push_back(static_cast<Position>(i));
  }
  return ElementSet::from_subarray(std::move(pos), 0);
}

Pattern1D nyquist_pattern(std::size_t length) {
  if (length == 0) throw ConfigError("Nyquist pattern length must be >= 1");
  return {std::vector<std::uint8_t>(length, 1), "nyquist"};
}

Pattern1D pattern_from_union(const ElementSet& combined, std::size_t period, std::string label) {
  if (combined.empty()) throw ConfigError("pattern union is empty");
  Pattern1D p{std::vector<std::uint8_t>(period, 0), std::move(label)};
  for (Position q : combined.positions()) {
    if (q < 0 || static_cast<std::size_t>(q) >= period) {
      throw ConfigError("union position " + std::to_string(q) + " outside the period");
    }
    p.indicator[static_cast<std::size_t>(q)] = 1;
  }
  return p;
}

void PatternND::validate() const {
  if (factors.size() < 2) throw ConfigError("multi-dimensional pattern needs at least 2 factors");
  for (const auto& f : factors) f.validate();
}

std::vector<std::size_t> PatternND::shape() const {
  std::vector<std::size_t> s;
  for (const auto& f : factors) s.push_back(f.period());
  return s;
}

NDArray<std::uint8_t> PatternND::indicator() const {
  validate();
  NDArray<std::uint8_t> out = as_ndarray(factors[0].indicator);
  for (std::size_t d = 1; d < factors.size(); ++d) {
    out = outer_product(out, as_ndarray(factors[d].indicator));
  }
  return out;
}

std::vector<std::vector<Position>> PatternND::points() const {
  validate();
  std::vector<std::vector<Position>> pts{{}};
  for (const auto& f : factors) {
    const ElementSet support = f.support();
    const auto& pos = support.positions();
    std::vector<std::vector<Position>> next;
    next.reserve(pts.size() * pos.size());
    for (const auto& prefix : pts) {
      for (Position p : pos) {
        auto v = prefix;
        v.push_back(p);
        next.push_back(std::move(v));
      }
    }
    pts = std::move(next);
  }
  return pts;
}

PatternND extend(const PatternND& p, const Pattern1D& factor) {
  PatternND out = p;
  out.factors.push_back(factor);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::size_t> box_shape(const std::vector<Lag>& extent) {
  std::vector<std::size_t> s;
  for (Lag e : extent) s.push_back(static_cast<std::size_t>(2 * e + 1));
  return s;
}

std::vector<Lag> pattern_extent(const PatternND& p) {
  std::vector<Lag> ext;
  for (const auto& f : p.factors) {
    const ElementSet s = f.support();
    ext.push_back(s.back() - s.front());
  }
  return ext;
}

// Flat lag-box index of a - b, or throws when outside the box.
std::size_t lag_slot(const std::vector<Position>& a, const std::vector<Position>& b,
                     const std::vector<Lag>& extent) {
  std::size_t f = 0;
  for (std::size_t d = 0; d < extent.size(); ++d) {
    const Lag l = a[d] - b[d];
    if (l < -extent[d] || l > extent[d]) throw ConfigError("lag outside the weight box");
    f = f * static_cast<std::size_t>(2 * extent[d] + 1) + static_cast<std::size_t>(l + extent[d]);
  }
  return f;
}

// Replaces each lag axis (centred at extent[d]) by a G-point frequency axis.
NDArray<Complex> transform_axes(NDArray<Complex> in, const std::vector<Lag>& extent,
                                const FrequencyGrid& grid) {
  grid.validate();
  const PhaseTable phase(grid.size);
  const std::size_t G = grid.size;
  for (std::size_t d = 0; d < extent.size(); ++d) {
    std::vector<std::size_t> shape = in.shape();
    const std::size_t n = shape[d];
    std::size_t outer = 1, inner = 1;
    for (std::size_t i = 0; i < d; ++i) outer *= shape[i];
    for (std::size_t i = d + 1; i < shape.size(); ++i) inner *= shape[i];
    shape[d] = G;
    NDArray<Complex> out(shape);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t l = 0; l < n; ++l) {
        const Lag lag = static_cast<Lag>(l) - extent[d];
        const std::size_t src = (o * n + l) * inner;
        bool any = false;
        for (std::size_t i = 0; i < inner; ++i) any = any || in[src + i] != Complex{};
        if (!any) continue;
        for (std::size_t k = 0; k < G; ++k) {
          const Complex w = phase(k, lag);
          const std::size_t dst = (o * G + k) * inner;
          for (std::size_t i = 0; i < inner; ++i) out[dst + i] += in[src + i] * w;
        }
      }
    }
    in = std::move(out);
  }
  return in;
}

NDArray<double> real_part(const NDArray<Complex>& c) {
  NDArray<double> out(c.shape());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
  return out;
}

}  // namespace

std::int64_t WeightND::at(std::span<const Lag> lag) const {
  if (lag.size() != extent.size()) throw std::out_of_range("lag rank mismatch");
  std::vector<std::size_t> idx(lag.size());
  for (std::size_t d = 0; d < lag.size(); ++d) {
    if (lag[d] < -extent[d] || lag[d] > extent[d]) return 0;
    idx[d] = static_cast<std::size_t>(lag[d] + extent[d]);
  }
  return counts.at(idx);
}

std::int64_t WeightND::total() const {
  return std::accumulate(counts.data().begin(), counts.data().end(), std::int64_t{0});
}

WeightND weight_nd(const PatternND& p) {
  const auto pts = p.points();
  WeightND w{pattern_extent(p), {}};
  w.counts = NDArray<std::int64_t>(box_shape(w.extent), 0);
  for (const auto& a : pts) {
    for (const auto& b : pts) ++w.counts[lag_slot(a, b, w.extent)];
  }
  return w;
}

WeightND weight_outer(const PatternND& p) {
  p.validate();
  WeightND w;
  for (std::size_t d = 0; d < p.dims(); ++d) {
    const WeightFunction z = weight_function(p.factors[d].support());
    w.extent.push_back(z.lmax());
    auto arr = as_ndarray(z.dense());
    w.counts = d == 0 ? std::move(arr) : outer_product(w.counts, arr);
  }
  return w;
}

WindowND WindowND::peak_normalized() const {
  WindowND out = *this;
  const auto& v = values.data();
  if (v.empty()) return out;
  const double peak = *std::max_element(v.begin(), v.end());
  if (!(peak > 0)) throw std::domain_error("window has no positive peak");
  for (double& x : out.values.data()) x /= peak;
  return out;
}

double max_abs_deviation(const WindowND& a, const WindowND& b) {
  if (a.grid != b.grid || a.values.shape() != b.values.shape()) {
    throw ConfigError("windows are sampled on different grids");
  }
  double m = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

WindowND bias_nd(std::span<const BiasWindow> windows) {
  if (windows.size() < 2) throw ConfigError("need at least two windows");
  WindowND out{windows[0].grid, as_ndarray(windows[0].values)};
  for (std::size_t d = 1; d < windows.size(); ++d) {
    if (windows[d].grid != out.grid || windows[d].values.size() != out.grid.size) {
      throw ConfigError("windows are sampled on different grids");
    }
    out.values = outer_product(out.values, as_ndarray(windows[d].values));
  }
  return out;
}

WindowND simulated_bias_nd(const WeightND& z, const FrequencyGrid& grid) {
  NDArray<Complex> c(z.counts.shape());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<double>(z.counts[i]);
  return {grid, real_part(transform_axes(std::move(c), z.extent, grid))};
}

// ---------------------------------------------------------------------------

void SignalModelND::validate(std::size_t dims) const {
  if (peaks.empty()) throw ConfigError("signal model needs at least one peak");
  for (const auto& p : peaks) {
    if (p.size() != dims) throw ConfigError("peak dimension does not match the pattern");
    for (double f : p) {
      if (!(f >= 0.0 && f < 1.0)) throw ConfigError("peak coordinates must lie in [0, 1)");
    }
  }
  if (!amplitudes.empty() && amplitudes.size() != peaks.size()) {
    throw ConfigError("amplitude list must match the peak list");
  }
  for (double a : amplitudes) {
    if (!(a > 0.0)) throw ConfigError("amplitudes must be positive");
  }
  if (!(noise_variance >= 0.0)) throw ConfigError("noise variance must be non-negative");
}

SnapshotSetND sample_pattern_nd(const SignalModelND& model, const PatternND& pattern,
                                std::size_t snapshots) {
  pattern.validate();
  model.validate(pattern.dims());
  if (snapshots == 0) throw ConfigError("need at least one snapshot");
  std::mt19937_64 rng(model.seed);
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> noise_dist(0.0, std::sqrt(model.noise_variance / 2.0));

  SnapshotSetND out;
  out.snapshots = snapshots;
  out.points = pattern.points();
  const auto shape = pattern.shape();
  std::vector<double> phases(model.peaks.size());
  for (std::size_t k = 0; k < snapshots; ++k) {
    for (double& p : phases) p = phase_dist(rng);
    std::vector<Complex> row;
    row.reserve(out.points.size());
    for (const auto& pt : out.points) {
      Complex v{};
      for (std::size_t q = 0; q < model.peaks.size(); ++q) {
        double arg = 0;
        for (std::size_t d = 0; d < pt.size(); ++d) {
          const double t = static_cast<double>(pt[d]) + static_cast<double>(k * shape[d]);
          arg += model.peaks[q][d] * t;
        }
        v += model.amplitude(q) * std::polar(1.0, std::numbers::pi * arg + phases[q]);
      }
      if (model.noise_variance > 0.0) v += Complex{noise_dist(rng), noise_dist(rng)};
      row.push_back(v);
    }
    out.samples.push_back(std::move(row));
  }
  return out;
}

LagEstimateND estimate_autocorrelation_nd(const SnapshotSetND& snaps, const WeightND& z) {
  if (snaps.snapshots == 0 || snaps.samples.size() != snaps.snapshots) {
    throw ConfigError("snapshot set is empty or inconsistent");
  }
  const auto& pts = snaps.points;
  for (const auto& p : pts) {
    if (p.size() != z.extent.size()) throw ConfigError("sample and weight dimensions differ");
  }
  NDArray<std::int64_t> pairs(z.counts.shape(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ++pairs[lag_slot(pts[i], pts[i], z.extent)];
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      ++pairs[lag_slot(pts[i], pts[j], z.extent)];
      ++pairs[lag_slot(pts[j], pts[i], z.extent)];
    }
  }
  if (pairs != z.counts) throw ConfigError("weights were not derived from the sampled pattern");

  NDArray<Complex> acc(z.counts.shape());
  for (const auto& x : snaps.samples) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      acc[lag_slot(pts[i], pts[i], z.extent)] += std::norm(x[i]);
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const Complex prod = x[i] * std::conj(x[j]);
        acc[lag_slot(pts[i], pts[j], z.extent)] += prod;
        acc[lag_slot(pts[j], pts[i], z.extent)] += std::conj(prod);
      }
    }
  }
  const double K = static_cast<double>(snaps.snapshots);
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (pairs[i] > 0) acc[i] /= K * static_cast<double>(pairs[i]);
  }
  return {z, std::move(acc)};
}

SpectrumND correlogram_nd(const LagEstimateND& est, const FrequencyGrid& grid) {
  return {grid, real_part(transform_axes(est.values, est.weights.extent, grid))};
}

std::vector<std::vector<double>> find_peaks_nd(const SpectrumND& spec, std::size_t count) {
  if (count < 1) throw ConfigError("peak count must be >= 1");
  const auto& shape = spec.power.shape();
  const std::size_t dims = shape.size();
  std::size_t nbr = 1;
  for (std::size_t d = 0; d < dims; ++d) nbr *= 3;

  std::vector<std::size_t> maxima;
  std::vector<std::size_t> q(dims);
  for (std::size_t f = 0; f < spec.power.size(); ++f) {
    const auto idx = spec.power.unflat(f);
    const double v = spec.power[f];
    bool strict = true;
    for (std::size_t c = 0; c < nbr && strict; ++c) {
      std::size_t code = c;
      bool centre = true;
      for (std::size_t d = dims; d-- > 0;) {
        const std::size_t step = code % 3;  // 0: -1, 1: 0, 2: +1
        code /= 3;
        centre = centre && step == 1;
        q[d] = (idx[d] + shape[d] + step - 1) % shape[d];
      }
      if (!centre && !(v > spec.power.at(q))) strict = false;
    }
    if (strict) maxima.push_back(f);
  }
  if (maxima.size() < count) throw PeakSearchError(count, {});
  std::stable_sort(maxima.begin(), maxima.end(),
                   [&](std::size_t a, std::size_t b) { return spec.power[a] > spec.power[b]; });
  maxima.resize(count);

  std::vector<std::vector<double>> out;
  for (std::size_t f : maxima) {
    std::vector<double> freq;
    for (std::size_t i : spec.power.unflat(f)) freq.push_back(spec.grid.at(i));
    out.push_back(std::move(freq));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double worst_match_distance(const std::vector<std::vector<double>>& found,
                            const std::vector<std::vector<double>>& truth) {
  if (found.empty() || truth.empty()) throw ConfigError("peak lists must be nonempty");
  auto circ = [](double a, double b) {
    const double d = std::fmod(std::abs(a - b), 2.0);
    return std::min(d, 2.0 - d);
  };
  double worst = 0;
  for (const auto& t : truth) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : found) {
      if (f.size() != t.size()) throw ConfigError("peak dimensions differ");
      double d = 0;
      for (std::size_t i = 0; i < t.size(); ++i) d = std::max(d, circ(f[i], t[i]));
      best = std::min(best, d);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

SpectrumND estimate_spectrum_nd(const PatternND& pattern, const SignalModelND& model,
                                std::size_t snapshots, const FrequencyGrid& grid) {
  const auto snaps = sample_pattern_nd(model, pattern, snapshots);
  return correlogram_nd(estimate_autocorrelation_nd(snaps, weight_nd(pattern)), grid);
}

}  // namespace coprime
