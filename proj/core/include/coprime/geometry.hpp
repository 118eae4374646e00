#pragma once

// Element positions for co-prime sampler families. All positions are exact
// integers in units of the Nyquist distance d.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "coprime/error.hpp"

namespace coprime {

using Position = std::int64_t;

/// True iff gcd(M, N) = 1 and both are at least 2.
bool validate_coprime(int M, int N) noexcept;

/// A validated co-prime pair. Construction throws ConfigError otherwise.
class CoPrimePair {
 public:
  CoPrimePair(int M, int N);

  int M() const noexcept { return m_; }
  int N() const noexcept { return n_; }

  friend bool operator==(const CoPrimePair&, const CoPrimePair&) = default;

 private:
  int m_;
  int n_;
};

/// Adjustable pivot array: {M n} and {N m + s}. Canonical shifts are
/// 0 <= s <= N-1; larger shifts need `displaced`.
struct ApcaConfig {
  CoPrimePair pair;
  int shift = 0;
  bool displaced = false;

  void validate() const;
};

/// Extremely sparse array: {E M n} and {E N m + s}. Canonical shifts are
/// 0 <= s <= E N - 1; larger shifts need `displaced`.
struct ExscaConfig {
  CoPrimePair pair;
  int shift = 0;
  int sparsity = 2;
  bool displaced = false;

  void validate() const;
};

/// One subarray of the generalized family. Elements sit at
/// sparsity * (spacing_base / compression) * n + shift for
/// 0 <= n < periods * count.
struct SubarraySpec {
  int count = 1;
  int spacing_base = 1;
  int compression = 1;
  int sparsity = 1;
  int periods = 1;
  int shift = 0;

  void validate() const;
  int compressed_spacing() const { return spacing_base / compression; }
  std::int64_t stride() const {
    return static_cast<std::int64_t>(sparsity) * compressed_spacing();
  }
  int element_count() const { return periods * count; }

  friend bool operator==(const SubarraySpec&, const SubarraySpec&) = default;
};

struct GeneralizedConfig {
  std::vector<SubarraySpec> subarrays;

  void validate() const;
};

/// Sorted distinct positions plus the subarray(s) each one came from.
class ElementSet {
 public:
  ElementSet() = default;

  /// Positions of a single subarray; duplicates are rejected.
  static ElementSet from_subarray(std::vector<Position> positions, int index);

  /// Union of several sets; coincident positions collapse into one entry
  /// that keeps every source index.
  static ElementSet merge(std::span<const ElementSet> parts);

  std::size_t size() const noexcept { return positions_.size(); }
  bool empty() const noexcept { return positions_.empty(); }
  const std::vector<Position>& positions() const noexcept { return positions_; }
  const std::vector<int>& sources(std::size_t i) const { return sources_.at(i); }
  bool contains(Position p) const;
  Position front() const { return positions_.front(); }
  Position back() const { return positions_.back(); }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  std::vector<Position> positions_;
  std::vector<std::vector<int>> sources_;
};

/// Subarrays and their union.
struct Layout {
  std::vector<ElementSet> subarrays;
  ElementSet combined;
};

/// Row/column index (n_p, m_p) of the shared element in the cross table.
struct PivotIndex {
  int n = 0;
  int m = 0;

  friend bool operator==(const PivotIndex&, const PivotIndex&) = default;
};

Layout positions_apca(const ApcaConfig& cfg);
Layout positions_exsca(const ExscaConfig& cfg);
Layout positions_generalized(const GeneralizedConfig& cfg);

GeneralizedConfig to_generalized(const ApcaConfig& cfg);
GeneralizedConfig to_generalized(const ExscaConfig& cfg);

/// Solves M n = N m + s with n in [0, N-1], m in [0, M-1].
std::optional<PivotIndex> pivot_location(const ApcaConfig& cfg);

/// Solves E M n = E N m + s. Requires E | s; for E = 2 that is even s.
std::optional<PivotIndex> pivot_location(const ExscaConfig& cfg);

/// Every position present in two or more of `sets`, ascending.
std::vector<Overlap> detect_overlap(std::span<const ElementSet> sets);

}  // namespace coprime
