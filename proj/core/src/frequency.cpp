#include "coprime/frequency.hpp"

#include <cmath>
#include <numbers>

#include "coprime/error.hpp"

namespace coprime {

void FrequencyGrid::validate() const {
  if (size < 4) throw ConfigError("frequency grid needs at least 4 points");
}

std::size_t FrequencyGrid::nearest(double f) const noexcept {
  double r = std::fmod(f, 2.0);
  if (r < 0) r += 2.0;
  const auto k = static_cast<std::size_t>(std::llround(r * static_cast<double>(size) / 2.0));
  return k % size;
}

PhaseTable::PhaseTable(std::size_t grid_size) : table_(grid_size) {
  const double g = static_cast<double>(grid_size);
  for (std::size_t r = 0; r < grid_size; ++r) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(r) / g;
    table_[r] = {std::cos(phi), -std::sin(phi)};
  }
}

}  // namespace coprime
