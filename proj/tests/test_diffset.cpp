#include <doctest.h>

#include <algorithm>

#include "coprime/diffset.hpp"
#include "support.hpp"

using namespace coprime;
using testing_support::to_map;

namespace {

ElementSet apca_union(int M, int N, int s) { return positions_apca(ApcaConfig{CoPrimePair(M, N), s}).combined; }

bool contains_all(const std::vector<Lag>& set, std::initializer_list<Lag> items) {
  return std::all_of(items.begin(), items.end(),
                     [&](Lag l) { return std::find(set.begin(), set.end(), l) != set.end(); });
}

}  // namespace

TEST_CASE("weight function storage") {
  const auto z = WeightFunction::from_counts({{-2, 1}, {0, 3}, {2, 1}, {5, 0}});
  CHECK(z.lmax() == 2);
  CHECK(z.at(0) == 3);
  CHECK(z(2) == 1);
  CHECK(z.at(1) == 0);
  CHECK(z.at(99) == 0);
  CHECK(z.total() == 5);
  CHECK(z.is_symmetric());
  CHECK(z.support() == std::vector<Lag>{-2, 0, 2});
  CHECK(z.decimate(2) == WeightFunction::from_counts({{-1, 1}, {0, 3}, {1, 1}}));
  CHECK_THROWS_AS(WeightFunction::from_counts({{1, -1}}), ConfigError);
  CHECK(WeightFunction{}.empty());
}

TEST_CASE("adjustable pivot unique counts and continuous ranges") {
  struct Row {
    int M, N, s;
    std::size_t unique;
    Lag range;
  };
  const Row rows[] = {
      {4, 3, 0, 17, 6},  {4, 3, 1, 19, 4},  {4, 3, 2, 21, 9},  {7, 3, 0, 29, 9},
      {7, 3, 1, 33, 7},  {7, 3, 2, 37, 15}, {3, 4, 3, 21, 9},
  };
  for (const auto& r : rows) {
    CAPTURE(r.M);
    CAPTURE(r.N);
    CAPTURE(r.s);
    const auto z = weight_function(apca_union(r.M, r.N, r.s));
    CHECK(lag_statistics(z).unique_count == r.unique);
    CHECK(continuous_range(z) == r.range);
  }
}

TEST_CASE("union weights match the ordered-pair oracle") {
  for (auto [M, N] : testing_support::coprime_pairs(8)) {
    for (int E = 1; E <= 3; ++E) {
      for (int s = 0; s <= E * N - 1; ++s) {
        const auto [a, b] = oracle::two_comb(M, N, E, s);
        const auto z = weight_function(positions_exsca(ExscaConfig{CoPrimePair(M, N), s, E}).combined);
        REQUIRE(to_map(z) == oracle::weights(oracle::unite(a, b)));
      }
    }
  }
}

TEST_CASE("self differences keep multiplicity") {
  const auto z = self_differences(ElementSet::from_subarray({0, 8, 16}, 0));
  CHECK(z.at(0) == 3);
  CHECK(z.at(8) == 2);
  CHECK(z.at(-16) == 1);
  CHECK(z.total() == 9);
}

TEST_CASE("extremely sparse difference sets for (4, 3)") {
  const CoPrimePair pair(4, 3);
  const Layout even = positions_exsca(ExscaConfig{pair, 0});
  CHECK(self_difference_set(even.subarrays[0], even.subarrays[1]) ==
        std::vector<Lag>{-18, -16, -12, -8, -6, 0, 6, 8, 12, 16, 18});

  const CrossDifferenceTable t0 = cross_differences(even.subarrays[0], even.subarrays[1]);
  CHECK(t0.rows() == 3);
  CHECK(t0.cols() == 4);
  CHECK(mirror_pair_set(t0) == std::vector<Lag>{-10, -4, -2, 0, 2, 4, 10});

  const Layout odd = positions_exsca(ExscaConfig{pair, 1});
  const CrossDifferenceTable t1 = cross_differences(odd.subarrays[0], odd.subarrays[1]);
  CHECK(t1.all_distinct());
  const auto self = self_difference_set(odd.subarrays[0], odd.subarrays[1]);
  const auto np = non_mirror_set(t1, self);
  CHECK(contains_all(np, {9, 15, -5, -11, -13, -19}));
  for (Lag l : np) {
    CHECK_FALSE(std::binary_search(self.begin(), self.end(), l));
  }

  for (int s = 0; s <= 5; ++s) {
    const auto z = weight_function(positions_exsca(ExscaConfig{pair, s}).combined);
    CHECK(z.at(0) == (s % 2 ? 7 : 6));
  }
}

TEST_CASE("cross table extent and signed sets") {
  const Layout l = positions_exsca(ExscaConfig{CoPrimePair(4, 3), 1});
  const CrossDifferenceTable t(l.subarrays[0], l.subarrays[1]);
  CHECK(t.extent() == std::pair<Lag, Lag>{-19, 15});
  CHECK(t.at(2, 0) == 15);
  const auto pos = t.positive_set();
  const auto comb = t.combined_set();
  CHECK(pos.size() == 12);
  for (Lag l : pos) {
    CHECK(std::binary_search(comb.begin(), comb.end(), l));
    CHECK(std::binary_search(comb.begin(), comb.end(), -l));
  }
}

TEST_CASE("continuous range needs a nonzero origin") {
  CHECK_THROWS(continuous_range(WeightFunction{}));
  const auto z = weight_function(ElementSet::from_subarray({0, 1, 2, 5}, 0));
  CHECK(continuous_range(z) == 5);
  const auto stats = lag_statistics(weight_function(ElementSet::from_subarray({0, 1, 4}, 0)));
  CHECK(stats.holes == std::vector<Lag>{-2, 2});
  CHECK(stats.min_lag == -4);
  CHECK(stats.max_lag == 4);
  CHECK(stats.unique_count == 7);
}

TEST_CASE("continuous range agrees with the oracle") {
  for (auto [M, N] : testing_support::coprime_pairs(8)) {
    for (int s = 0; s <= N - 1; ++s) {
      const auto [a, b] = oracle::two_comb(M, N, 1, s);
      CHECK(continuous_range(weight_function(apca_union(M, N, s))) ==
            oracle::continuous_range(oracle::weights(oracle::unite(a, b))));
    }
  }
}
