#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "coprime/closedform.hpp"
#include "support.hpp"

using namespace coprime;
using testing_support::to_map;

namespace {

double max_dev(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

oracle::Map brute_exsca(int M, int N, int s, int E = 2) {
  const auto [a, b] = oracle::two_comb(M, N, E, s);
  return oracle::weights(oracle::unite(a, b));
}

GeneralizedConfig three_comb(int s3, int first_compression = 1) {
  return GeneralizedConfig{{
      SubarraySpec{2, 15, first_compression, 3, 3, 0},
      SubarraySpec{3, 10, 1, 2, 2, 1},
      SubarraySpec{5, 6, 1, 1, 1, s3},
  }};
}

std::vector<long long> generalized_positions(const GeneralizedConfig& g) {
  std::vector<long long> all;
  for (const auto& s : g.subarrays) {
    for (long long p : oracle::comb(s.stride(), s.element_count(), s.shift)) all.push_back(p);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

}  // namespace

TEST_CASE("fold function") {
  CHECK(fold_table(4) == std::vector<int>{0, 1, 1, 0});
  CHECK(fold_table(5) == std::vector<int>{0, 1, 2, 1, 0});
  CHECK(fold_table(1) == std::vector<int>{0});
  CHECK(fold(0, 3) == 0);
  CHECK(fold(2, 3) == 0);
  CHECK_THROWS_AS(fold(3, 3), std::out_of_range);
  CHECK_THROWS_AS(fold(-1, 3), std::out_of_range);
}

TEST_CASE("four-term and piecewise weights equal brute force") {
  for (auto [M, N] : testing_support::coprime_pairs(8)) {
    const CoPrimePair pair(M, N);
    for (int s = 0; s <= 2 * N - 1; ++s) {
      CAPTURE(M);
      CAPTURE(N);
      CAPTURE(s);
      const auto expected = brute_exsca(M, N, s);
      const auto pivot = pivot_location(ExscaConfig{pair, s});
      REQUIRE(to_map(weight_closed_exsca(pair, s, pivot)) == expected);
      REQUIRE(to_map(weight_piecewise_exsca(pair, s)) == expected);
    }
  }
}

TEST_CASE("closed form rejects non-canonical shifts") {
  const CoPrimePair pair(4, 3);
  CHECK_THROWS_AS(weight_closed_exsca(pair, 6, std::nullopt), ConfigError);
  CHECK_THROWS_AS(weight_piecewise_exsca(pair, -1), ConfigError);
  CHECK_THROWS_AS(bias_closed_exsca(pair, 7, std::nullopt), ConfigError);
}

TEST_CASE("unique counts from the mirror-pair cardinality") {
  for (auto [M, N] : testing_support::coprime_pairs(8)) {
    const CoPrimePair pair(M, N);
    for (int s = 0; s <= 2 * N - 1; ++s) {
      const Layout l = positions_exsca(ExscaConfig{pair, s});
      const auto mirrors = mirror_pair_set(cross_differences(l.subarrays[0], l.subarrays[1]));
      CHECK(unique_count_exsca(pair, s, mirrors.size()) == brute_exsca(M, N, s).size());
    }
  }
}

TEST_CASE("mirror-pair characterization equals the table definition") {
  for (auto [M, N] : testing_support::coprime_pairs(8)) {
    const CoPrimePair pair(M, N);
    for (int s = 0; s <= 2 * N - 1; ++s) {
      const Layout l = positions_exsca(ExscaConfig{pair, s});
      CHECK(mirror_pairs_characterized(pair, s, 2) ==
            mirror_pair_set(cross_differences(l.subarrays[0], l.subarrays[1])));
    }
  }
}

TEST_CASE("cross extent and reach") {
  for (auto [M, N] : testing_support::coprime_pairs(8)) {
    const CoPrimePair pair(M, N);
    for (int E = 1; E <= 3; ++E) {
      for (int s = 0; s <= E * N - 1; ++s) {
        const auto [a, b] = oracle::two_comb(M, N, E, s);
        long long lo = 0, hi = 0, reach = 0;
        bool first = true;
        for (long long p : a) {
          for (long long q : b) {
            lo = first ? p - q : std::min(lo, p - q);
            hi = first ? p - q : std::max(hi, p - q);
            first = false;
          }
        }
        for (const auto& [l, c] : oracle::weights(oracle::unite(a, b))) reach = std::max(reach, std::abs(l));
        CHECK(cross_extent(pair, s, E) == LagInterval{lo, hi});
        CHECK(cross_reach(pair, s, E) == std::max(-lo, hi));
        CHECK(coarray_reach(pair, s, E) == reach);
      }
    }
  }
}

TEST_CASE("dirichlet ratio limits") {
  CHECK(dirichlet_ratio(0.0, 5) == doctest::Approx(5.0));
  CHECK(dirichlet_ratio(1.0, 4) == doctest::Approx(-4.0));
  CHECK(dirichlet_ratio(1.0, 3) == doctest::Approx(3.0));
  CHECK(dirichlet_ratio(2.0, 4) == doctest::Approx(4.0));
  CHECK(dirichlet_ratio(0.25, 4) == doctest::Approx(0.0).epsilon(1e-12));
  const double t = 0.1234;
  CHECK(dirichlet_ratio(t, 6) == doctest::Approx(std::sin(6 * M_PI * t) / std::sin(M_PI * t)));
}

TEST_CASE("closed-form window equals the direct transform") {
  const std::size_t G = 1024;
  for (auto [M, N] : {std::pair{4, 3}, {7, 3}, {3, 4}, {7, 6}, {5, 2}}) {
    const CoPrimePair pair(M, N);
    for (int s = 0; s <= 2 * N - 1; ++s) {
      const auto pivot = pivot_location(ExscaConfig{pair, s});
      const auto closed = bias_closed_exsca(pair, s, pivot, {FrequencyGrid{G}});
      const auto truth = oracle::dtft_grid(brute_exsca(M, N, s), G);
      CHECK(max_dev(closed.peak_normalized().values, oracle::peak_normalized(truth)) < 1e-9);
      CHECK(max_dev(closed.values, truth) < 1e-8);
    }
  }
}

TEST_CASE("simulated window and scale") {
  const auto z = weight_function(positions_apca(ApcaConfig{CoPrimePair(4, 3), 2}).combined);
  const auto w = simulated_bias(z, {FrequencyGrid{512}});
  CHECK(max_dev(w.values, oracle::dtft_grid(to_map(z), 512)) < 1e-9);
  CHECK(w.values[0] == doctest::Approx(36.0));
  const auto scaled = simulated_bias(z, {FrequencyGrid{512}, 4.0});
  CHECK(scaled.values[0] == doctest::Approx(9.0));
  CHECK(w.peak_normalized().normalization == Normalization::peak_unit);
  CHECK(max_abs_deviation(w.peak_normalized(), scaled.peak_normalized()) < 1e-12);
  CHECK_THROWS_AS(max_abs_deviation(w, simulated_bias(z, {FrequencyGrid{256}})), ConfigError);
}

TEST_CASE("dense sampler window is the triangle transform") {
  std::vector<long long> dense;
  for (long long i = 0; i < 12; ++i) dense.push_back(i);
  const auto w = nyquist_bias(12, {FrequencyGrid{512}});
  CHECK(max_dev(w.values, oracle::dtft_grid(oracle::weights(dense), 512)) < 1e-9);
}

TEST_CASE("subarray self term") {
  const auto z = weight_closed_subarray(SubarraySpec{3, 4, 2, 3, 2, 5});
  CHECK(z.at(0) == 6);
  CHECK(z.at(6) == 5);
  CHECK(z.at(-30) == 1);
  CHECK(z.total() == 36);
}

TEST_CASE("generalized closed forms on the three-comb example") {
  const std::size_t G = 1024;
  for (int compression : {1, 3}) {
    for (int s3 = 2; s3 <= 13; ++s3) {
      CAPTURE(compression);
      CAPTURE(s3);
      const GeneralizedConfig g = three_comb(s3, compression);
      const auto overlaps = detect_overlap(positions_generalized(g).subarrays);
      if (!overlaps.empty()) {
        CHECK_THROWS_AS(weight_closed_generalized(g), ClosedFormInapplicable);
        try {
          bias_closed_generalized(g);
          FAIL("expected ClosedFormInapplicable");
        } catch (const ClosedFormInapplicable& e) {
          CHECK(e.overlaps() == overlaps);
        }
        continue;
      }
      const auto truth = oracle::weights(generalized_positions(g));
      CHECK(to_map(weight_closed_generalized(g)) == truth);
      const auto w = bias_closed_generalized(g, {FrequencyGrid{G}});
      CHECK(max_dev(w.peak_normalized().values, oracle::peak_normalized(oracle::dtft_grid(truth, G))) < 1e-9);
    }
  }
}

TEST_CASE("adjustable pivot relative amplitudes") {
  struct Row {
    int M, N;
    std::vector<double> R;
  };
  const Row rows[] = {{4, 3, {0.7237, 0.6229, 0.7121}},
                      {7, 3, {0.5440, 0.5018, 0.5410}},
                      {3, 4, {0.7237, 0.7237, 0.6229, 0.7121}}};
  for (const auto& r : rows) {
    for (int s = 0; s < r.N; ++s) {
      CAPTURE(r.M);
      CAPTURE(s);
      const auto z = weight_function(positions_apca(ApcaConfig{CoPrimePair(r.M, r.N), s}).combined);
      const auto w = simulated_bias(z);
      const double R = relative_amplitude(w);
      CHECK(std::abs(R - r.R[static_cast<std::size_t>(s)]) < 6e-5);
      CHECK(R == doctest::Approx(oracle::relative_amplitude(w.values)).epsilon(1e-12));
    }
  }
}

TEST_CASE("relative amplitude needs a side lobe") {
  CHECK_THROWS_AS(relative_amplitude(nyquist_bias(1, {FrequencyGrid{64}})), std::domain_error);
}

TEST_CASE("mirror-pair characterization beyond E = 2") {
  for (auto [M, N] : testing_support::coprime_pairs(8)) {
    const CoPrimePair pair(M, N);
    for (int E = 3; E <= 4; ++E) {
      for (int s = 0; s <= E * N - 1; ++s) {
        CAPTURE(M);
        CAPTURE(N);
        CAPTURE(E);
        CAPTURE(s);
        const Layout l = positions_exsca(ExscaConfig{pair, s, E});
        CHECK(mirror_pairs_characterized(pair, s, E) ==
              mirror_pair_set(cross_differences(l.subarrays[0], l.subarrays[1])));
      }
    }
  }
}
