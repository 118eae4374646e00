#include "coprime/diffset.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace coprime {

WeightFunction WeightFunction::from_counts(const std::map<Lag, std::int64_t>& counts) {
  WeightFunction z;
  Lag extent = 0;
  bool any = false;
  for (const auto& [lag, c] : counts) {
    if (c < 0) throw ConfigError("weight counts must be non-negative");
    if (c == 0) continue;
    any = true;
    extent = std::max(extent, std::abs(lag));
  }
  if (!any) return z;
  z.extent_ = extent;
  z.counts_.assign(static_cast<std::size_t>(2 * extent + 1), 0);
  for (const auto& [lag, c] : counts) {
    if (c > 0) z.counts_[static_cast<std::size_t>(lag + extent)] = c;
  }
  return z;
}

std::int64_t WeightFunction::at(Lag l) const noexcept {
  if (counts_.empty() || l < -extent_ || l > extent_) return 0;
  return counts_[static_cast<std::size_t>(l + extent_)];
}

std::vector<Lag> WeightFunction::support() const {
  std::vector<Lag> out;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] > 0) out.push_back(static_cast<Lag>(i) - extent_);
  }
  return out;
}

std::int64_t WeightFunction::total() const noexcept {
  std::int64_t t = 0;
  for (auto c : counts_) t += c;
  return t;
}

bool WeightFunction::is_symmetric() const noexcept {
  return std::equal(counts_.begin(), counts_.end(), counts_.rbegin());
}

std::map<Lag, std::int64_t> WeightFunction::to_map() const {
  std::map<Lag, std::int64_t> out;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] > 0) out.emplace(static_cast<Lag>(i) - extent_, counts_[i]);
  }
  return out;
}

WeightFunction WeightFunction::decimate(int factor) const {
  if (factor < 1) throw ConfigError("decimation factor must be >= 1");
  std::map<Lag, std::int64_t> out;
  for (Lag l = -extent_ / factor; l <= extent_ / factor; ++l) out[l] = at(l * factor);
  return from_counts(out);
}

WeightFunction difference_counts(std::span<const Position> positions) {
  if (positions.empty()) throw ConfigError("difference counts need at least one position");
  const auto [lo, hi] = std::minmax_element(positions.begin(), positions.end());
  const Lag extent = *hi - *lo;
  std::vector<std::int64_t> dense(static_cast<std::size_t>(2 * extent + 1), 0);
  for (Position a : positions) {
    for (Position b : positions) ++dense[static_cast<std::size_t>(a - b + extent)];
  }
  std::map<Lag, std::int64_t> counts;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] > 0) counts.emplace(static_cast<Lag>(i) - extent, dense[i]);
  }
  return WeightFunction::from_counts(counts);
}

WeightFunction self_differences(const ElementSet& sub) {
  return difference_counts(sub.positions());
}

WeightFunction weight_function(const ElementSet& combined) {
  return difference_counts(combined.positions());
}

CrossDifferenceTable::CrossDifferenceTable(const ElementSet& sub1, const ElementSet& sub2)
    : rows_(sub1.size()), cols_(sub2.size()) {
  if (sub1.empty() || sub2.empty()) throw ConfigError("cross differences need nonempty subarrays");
  values_.reserve(rows_ * cols_);
  for (Position a : sub1.positions()) {
    for (Position b : sub2.positions()) values_.push_back(a - b);
  }
}

std::vector<Lag> CrossDifferenceTable::positive_set() const {
  std::set<Lag> s(values_.begin(), values_.end());
  return {s.begin(), s.end()};
}

std::vector<Lag> CrossDifferenceTable::combined_set() const {
  std::set<Lag> s;
  for (Lag v : values_) {
    s.insert(v);
    s.insert(-v);
  }
  return {s.begin(), s.end()};
}

bool CrossDifferenceTable::all_distinct() const {
  return positive_set().size() == values_.size();
}

std::pair<Lag, Lag> CrossDifferenceTable::extent() const {
  const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
  return {*lo, *hi};
}

CrossDifferenceTable cross_differences(const ElementSet& sub1, const ElementSet& sub2) {
  return CrossDifferenceTable(sub1, sub2);
}

std::vector<Lag> mirror_pair_set(const CrossDifferenceTable& table) {
  const std::vector<Lag> pos = table.positive_set();
  std::vector<Lag> out;
  for (Lag v : pos) {
    if (std::binary_search(pos.begin(), pos.end(), -v)) out.push_back(v);
  }
  return out;
}

std::vector<Lag> self_difference_set(const ElementSet& sub1, const ElementSet& sub2) {
  std::set<Lag> s;
  for (const ElementSet* sub : {&sub1, &sub2}) {
    for (Lag l : self_differences(*sub).support()) s.insert(l);
  }
  return {s.begin(), s.end()};
}

std::vector<Lag> non_mirror_set(const CrossDifferenceTable& table,
                                std::span<const Lag> self_lags) {
  const std::vector<Lag> mirrors = mirror_pair_set(table);
  std::vector<Lag> out;
  for (Lag l : table.combined_set()) {
    if (std::binary_search(mirrors.begin(), mirrors.end(), l)) continue;
    if (std::find(self_lags.begin(), self_lags.end(), l) != self_lags.end()) continue;
    out.push_back(l);
  }
  return out;
}

Lag continuous_range(const WeightFunction& z) {
  if (z.at(0) <= 0) throw ConfigError("continuous range needs z(0) > 0");
  Lag c = 0;
  while (z.at(c + 1) > 0 && z.at(-(c + 1)) > 0) ++c;
  return c;
}

LagStatistics lag_statistics(const WeightFunction& z) {
  LagStatistics st;
  const std::vector<Lag> sup = z.support();
  if (sup.empty()) return st;
  st.min_lag = sup.front();
  st.max_lag = sup.back();
  st.unique_count = sup.size();
  for (Lag l = st.min_lag; l <= st.max_lag; ++l) {
    if (z.at(l) == 0) st.holes.push_back(l);
  }
  return st;
}

}  // namespace coprime
