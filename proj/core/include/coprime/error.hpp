#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace coprime {

/// Invalid array parameters or experiment configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A subarray position shared by two or more subarrays.
struct Overlap {
  std::int64_t position = 0;
  std::vector<int> subarrays;  // zero-based, ascending

  friend bool operator==(const Overlap&, const Overlap&) = default;
};

/// The non-overlap closed forms were asked to describe a geometry with
/// coincident elements. Carries the offending positions.
class ClosedFormInapplicable : public std::runtime_error {
 public:
  explicit ClosedFormInapplicable(std::vector<Overlap> overlaps);

  const std::vector<Overlap>& overlaps() const noexcept { return overlaps_; }

 private:
  std::vector<Overlap> overlaps_;
};

/// Fewer local maxima than requested.
class PeakSearchError : public std::runtime_error {
 public:
  PeakSearchError(std::size_t requested, std::vector<double> found);

  const std::vector<double>& found() const noexcept { return found_; }

 private:
  std::vector<double> found_;
};

}  // namespace coprime
