#pragma once

// Uniform normalized-frequency grid f_k = 2k/G over [0, 2), f in units of pi
// rad/sample, and a phase table for exp(-j pi f_k l) at integer lags.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace coprime {

inline constexpr std::size_t kDefaultGridSize = 4096;

struct FrequencyGrid {
  std::size_t size = kDefaultGridSize;

  void validate() const;
  double at(std::size_t k) const noexcept { return 2.0 * static_cast<double>(k) / size; }
  /// Nearest grid index to normalized frequency f (wrapped into [0, 2)).
  std::size_t nearest(double f) const noexcept;
  /// Bin spacing in normalized units.
  double step() const noexcept { return 2.0 / static_cast<double>(size); }

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;
};

/// exp(-j 2 pi k l / G) for integer k, l, looked up modulo G.
class PhaseTable {
 public:
  explicit PhaseTable(std::size_t grid_size);

  std::complex<double> operator()(std::size_t k, std::int64_t lag) const noexcept {
    return table_[index(k, lag)];
  }
  double cos(std::size_t k, std::int64_t lag) const noexcept { return table_[index(k, lag)].real(); }
  std::size_t size() const noexcept { return table_.size(); }

 private:
  std::size_t index(std::size_t k, std::int64_t lag) const noexcept {
    const auto g = static_cast<std::int64_t>(table_.size());
    std::int64_t r = (static_cast<std::int64_t>(k) % g) * (lag % g) % g;
    if (r < 0) r += g;
    return static_cast<std::size_t>(r);
  }

  std::vector<std::complex<double>> table_;
};

}  // namespace coprime
