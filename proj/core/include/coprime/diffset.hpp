#pragma once

// Brute-force difference-set analytics over element positions.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "coprime/geometry.hpp"

namespace coprime {

using Lag = std::int64_t;

/// Count of ordered element pairs at each lag, stored densely over
/// [-extent, extent]. Lags outside the stored range have count zero.
class WeightFunction {
 public:
  WeightFunction() = default;

  /// Builds from sparse counts; zero entries are dropped and negative
  /// counts rejected.
  static WeightFunction from_counts(const std::map<Lag, std::int64_t>& counts);

  std::int64_t at(Lag l) const noexcept;
  std::int64_t operator()(Lag l) const noexcept { return at(l); }

  /// Largest |l| with a nonzero count (0 for an empty function).
  Lag lmax() const noexcept { return extent_; }

  /// Lags with z(l) > 0, ascending.
  std::vector<Lag> support() const;

  std::int64_t total() const noexcept;
  bool is_symmetric() const noexcept;
  bool empty() const noexcept { return counts_.empty(); }

  std::map<Lag, std::int64_t> to_map() const;

  /// Dense counts over [-lmax, lmax].
  const std::vector<std::int64_t>& dense() const noexcept { return counts_; }

  /// Every other lag: result(l) = z(2 l).
  WeightFunction decimate(int factor) const;

  friend bool operator==(const WeightFunction&, const WeightFunction&) = default;

 private:
  Lag extent_ = 0;
  std::vector<std::int64_t> counts_;
};

/// All ordered differences a - b, a and b from the same positions.
WeightFunction difference_counts(std::span<const Position> positions);

/// Ordered self differences of one subarray (multiplicities kept).
WeightFunction self_differences(const ElementSet& sub);

/// Contributor counts of the distinct-position union.
WeightFunction weight_function(const ElementSet& combined);

/// Table of sub1[n] - sub2[m] over all (n, m).
class CrossDifferenceTable {
 public:
  CrossDifferenceTable(const ElementSet& sub1, const ElementSet& sub2);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Lag at(std::size_t n, std::size_t m) const { return values_.at(n * cols_ + m); }

  /// Row-major entries (L+_C with repetitions, if any).
  const std::vector<Lag>& entries() const noexcept { return values_; }

  /// Distinct positive-orientation values, ascending.
  std::vector<Lag> positive_set() const;

  /// Distinct values of the union of the table and its negation.
  std::vector<Lag> combined_set() const;

  bool all_distinct() const;
  std::pair<Lag, Lag> extent() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Lag> values_;
};

CrossDifferenceTable cross_differences(const ElementSet& sub1, const ElementSet& sub2);

/// Lags l of the table whose negation also appears in the table.
std::vector<Lag> mirror_pair_set(const CrossDifferenceTable& table);

/// Distinct lags of the self-difference multisets of both subarrays.
std::vector<Lag> self_difference_set(const ElementSet& sub1, const ElementSet& sub2);

/// Cross lags having a single contributor pair: L_C minus L_p minus L_S.
std::vector<Lag> non_mirror_set(const CrossDifferenceTable& table,
                                std::span<const Lag> self_lags);

/// Largest c with z(l) > 0 for all |l| <= c.
Lag continuous_range(const WeightFunction& z);

struct LagStatistics {
  std::size_t unique_count = 0;
  std::vector<Lag> holes;
  Lag min_lag = 0;
  Lag max_lag = 0;
};

LagStatistics lag_statistics(const WeightFunction& z);

}  // namespace coprime
