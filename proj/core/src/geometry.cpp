#include "coprime/geometry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace coprime {

ClosedFormInapplicable::ClosedFormInapplicable(std::vector<Overlap> overlaps)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "closed form inapplicable: " << overlaps.size()
           << " overlapping position(s)";
        for (const auto& o : overlaps) os << ' ' << o.position;
        return os.str();
      }()),
      overlaps_(std::move(overlaps)) {}

PeakSearchError::PeakSearchError(std::size_t requested, std::vector<double> found)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "requested " << requested << " peaks, found " << found.size() << ":";
        for (double f : found) os << ' ' << f;
        return os.str();
      }()),
      found_(std::move(found)) {}

bool validate_coprime(int M, int N) noexcept {
  return M >= 2 && N >= 2 && std::gcd(M, N) == 1;
}

CoPrimePair::CoPrimePair(int M, int N) : m_(M), n_(N) {
  if (!validate_coprime(M, N)) {
    std::ostringstream os;
    os << "(" << M << ", " << N << ") is not a co-prime pair with M, N >= 2";
    throw ConfigError(os.str());
  }
}

void ApcaConfig::validate() const {
  if (shift < 0) throw ConfigError("APCA shift must be non-negative");
  if (!displaced && shift > pair.N() - 1) {
    throw ConfigError("APCA shift must lie in [0, N-1] unless displaced");
  }
}

void ExscaConfig::validate() const {
  if (sparsity < 1) throw ConfigError("sparsity factor must be >= 1");
  if (shift < 0) throw ConfigError("ExSCA shift must be non-negative");
  if (!displaced && shift > sparsity * pair.N() - 1) {
    throw ConfigError("ExSCA shift must lie in [0, E*N-1] unless displaced");
  }
}

void SubarraySpec::validate() const {
  if (count < 1) throw ConfigError("subarray element count must be >= 1");
  if (spacing_base < 1) throw ConfigError("subarray spacing must be >= 1");
  if (compression < 1 || spacing_base % compression != 0) {
    throw ConfigError("compression factor must divide the subarray spacing");
  }
  if (sparsity < 1) throw ConfigError("subarray sparsity must be >= 1");
  if (periods < 1) throw ConfigError("subarray periods must be >= 1");
  if (shift < 0) throw ConfigError("subarray shift must be non-negative");
}

void GeneralizedConfig::validate() const {
  if (subarrays.size() < 2) {
    throw ConfigError("generalized configuration needs at least two subarrays");
  }
  for (const auto& s : subarrays) s.validate();
}

ElementSet ElementSet::from_subarray(std::vector<Position> positions, int index) {
  std::sort(positions.begin(), positions.end());
  if (std::adjacent_find(positions.begin(), positions.end()) != positions.end()) {
    throw ConfigError("subarray contains repeated positions");
  }
  ElementSet out;
  out.sources_.assign(positions.size(), std::vector<int>{index});
  out.positions_ = std::move(positions);
  return out;
}

ElementSet ElementSet::merge(std::span<const ElementSet> parts) {
  std::map<Position, std::vector<int>> acc;
  for (const auto& part : parts) {
    for (std::size_t i = 0; i < part.size(); ++i) {
      auto& src = acc[part.positions_[i]];
      src.insert(src.end(), part.sources_[i].begin(), part.sources_[i].end());
    }
  }
  ElementSet out;
  out.positions_.reserve(acc.size());
  out.sources_.reserve(acc.size());
  for (auto& [pos, src] : acc) {
    std::sort(src.begin(), src.end());
    src.erase(std::unique(src.begin(), src.end()), src.end());
    out.positions_.push_back(pos);
    out.sources_.push_back(std::move(src));
  }
  return out;
}

bool ElementSet::contains(Position p) const {
  return std::binary_search(positions_.begin(), positions_.end(), p);
}

namespace {

ElementSet comb(std::int64_t stride, int n, std::int64_t offset, int index) {
  std::vector<Position> pos(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(i)] = stride * i + offset;
  return ElementSet::from_subarray(std::move(pos), index);
}

Layout two_comb_layout(const CoPrimePair& pair, int sparsity, int shift) {
  Layout out;
  out.subarrays.push_back(comb(std::int64_t{sparsity} * pair.M(), pair.N(), 0, 0));
  out.subarrays.push_back(comb(std::int64_t{sparsity} * pair.N(), pair.M(), shift, 1));
  out.combined = ElementSet::merge(out.subarrays);
  return out;
}

// Lemma-1 style search: the m in [0, M-1] making (N m + k) / M an integer
// n in [0, N-1]. At most one such m exists for a co-prime pair.
std::optional<PivotIndex> solve_pivot(int M, int N, long long k) {
  for (int m = 0; m < M; ++m) {
    const long long num = static_cast<long long>(N) * m + k;
    if (num >= 0 && num % M == 0) {
      const long long n = num / M;
      if (n <= N - 1) return PivotIndex{static_cast<int>(n), m};
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

Layout positions_apca(const ApcaConfig& cfg) {
  cfg.validate();
  return two_comb_layout(cfg.pair, 1, cfg.shift);
}

Layout positions_exsca(const ExscaConfig& cfg) {
  cfg.validate();
  return two_comb_layout(cfg.pair, cfg.sparsity, cfg.shift);
}

Layout positions_generalized(const GeneralizedConfig& cfg) {
  cfg.validate();
  Layout out;
  out.subarrays.reserve(cfg.subarrays.size());
  for (std::size_t i = 0; i < cfg.subarrays.size(); ++i) {
    const auto& s = cfg.subarrays[i];
    out.subarrays.push_back(comb(s.stride(), s.element_count(), s.shift, static_cast<int>(i)));
  }
  out.combined = ElementSet::merge(out.subarrays);
  return out;
}

GeneralizedConfig to_generalized(const ApcaConfig& cfg) {
  cfg.validate();
  return GeneralizedConfig{{
      SubarraySpec{.count = cfg.pair.N(), .spacing_base = cfg.pair.M()},
      SubarraySpec{.count = cfg.pair.M(), .spacing_base = cfg.pair.N(), .shift = cfg.shift},
  }};
}

GeneralizedConfig to_generalized(const ExscaConfig& cfg) {
  cfg.validate();
  return GeneralizedConfig{{
      SubarraySpec{.count = cfg.pair.N(), .spacing_base = cfg.pair.M(), .sparsity = cfg.sparsity},
      SubarraySpec{.count = cfg.pair.M(),
                   .spacing_base = cfg.pair.N(),
                   .sparsity = cfg.sparsity,
                   .shift = cfg.shift},
  }};
}

std::optional<PivotIndex> pivot_location(const ApcaConfig& cfg) {
  cfg.validate();
  return solve_pivot(cfg.pair.M(), cfg.pair.N(), cfg.shift);
}

std::optional<PivotIndex> pivot_location(const ExscaConfig& cfg) {
  cfg.validate();
  if (cfg.shift % cfg.sparsity != 0) return std::nullopt;
  return solve_pivot(cfg.pair.M(), cfg.pair.N(), cfg.shift / cfg.sparsity);
}

std::vector<Overlap> detect_overlap(std::span<const ElementSet> sets) {
  std::map<Position, std::vector<int>> owners;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (Position p : sets[i].positions()) owners[p].push_back(static_cast<int>(i));
  }
  std::vector<Overlap> out;
  for (auto& [pos, idx] : owners) {
    if (idx.size() >= 2) out.push_back(Overlap{pos, std::move(idx)});
  }
  return out;
}

}  // namespace coprime
