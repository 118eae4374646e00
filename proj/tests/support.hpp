#pragma once

// Conversions between library types and the plain containers the oracles use.

#include <vector>

#include "coprime/diffset.hpp"
#include "coprime/geometry.hpp"
#include "oracles.hpp"

namespace testing_support {

inline oracle::Map to_map(const coprime::WeightFunction& z) {
  oracle::Map m;
  for (const auto& [l, c] : z.to_map()) m[l] = c;
  return m;
}

inline std::vector<long long> to_vec(const coprime::ElementSet& s) {
  return {s.positions().begin(), s.positions().end()};
}

/// Co-prime pairs with 2 <= M, N <= limit.
inline std::vector<std::pair<int, int>> coprime_pairs(int limit) {
  std::vector<std::pair<int, int>> out;
  for (int M = 2; M <= limit; ++M) {
    for (int N = 2; N <= limit; ++N) {
      if (std::gcd(M, N) == 1) out.emplace_back(M, N);
    }
  }
  return out;
}

}  // namespace testing_support
