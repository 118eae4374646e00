#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "coprime/multidim.hpp"
#include "support.hpp"

using namespace coprime;

namespace {

Pattern1D exsca_pattern(int M, int N, int s) {
  const auto u = positions_exsca(ExscaConfig{CoPrimePair(M, N), s}).combined;
  return pattern_from_union(u, static_cast<std::size_t>(2 * M * N), "exsca");
}

std::vector<std::vector<int>> image(const PatternND& p) {
  const auto ind = p.indicator();
  const auto sh = ind.shape();
  std::vector<std::vector<int>> img(sh[0], std::vector<int>(sh[1]));
  for (std::size_t i = 0; i < sh[0]; ++i) {
    for (std::size_t j = 0; j < sh[1]; ++j) {
      const std::size_t idx[] = {i, j};
      img[i][j] = ind.at(idx);
    }
  }
  return img;
}

}  // namespace

TEST_CASE("ndarray indexing and outer product") {
  NDArray<double> a({2, 3, 4});
  for (std::size_t f = 0; f < a.size(); ++f) {
    const auto idx = a.unflat(f);
    CHECK(a.flat(idx) == f);
  }
  const std::size_t bad[] = {2, 0, 0};
  CHECK_THROWS(a.flat(bad));

  const auto o = outer_product(as_ndarray<double>({1, 2}), as_ndarray<double>({3, 5, 7}));
  CHECK(o.shape() == std::vector<std::size_t>{2, 3});
  CHECK(o.data() == std::vector<double>{3, 5, 7, 6, 10, 14});
}

TEST_CASE("one-dimensional patterns") {
  const auto n = nyquist_pattern(5);
  CHECK(n.ones() == 5);
  CHECK(n.period() == 5);
  const auto p = exsca_pattern(4, 3, 1);
  CHECK(p.period() == 24);
  CHECK(p.ones() == 7);
  CHECK(testing_support::to_vec(p.support()) == std::vector<long long>{0, 1, 7, 8, 13, 16, 19});
  CHECK_THROWS_AS(pattern_from_union(positions_exsca(ExscaConfig{CoPrimePair(4, 3), 5}).combined, 23),
                  ConfigError);
  CHECK_THROWS_AS((PatternND{{n}}.validate()), ConfigError);
}

TEST_CASE("separable weights equal the direct 2D autocorrelation") {
  for (int s = 0; s <= 5; ++s) {
    CAPTURE(s);
    const PatternND p{{nyquist_pattern(6), exsca_pattern(4, 3, s)}};
    const auto direct = weight_nd(p);
    CHECK(direct == weight_outer(p));
    const auto truth = oracle::weights_2d(image(p));
    std::int64_t nonzero = 0;
    for (Lag a = -direct.extent[0]; a <= direct.extent[0]; ++a) {
      for (Lag b = -direct.extent[1]; b <= direct.extent[1]; ++b) {
        const Lag lag[] = {a, b};
        const auto it = truth.find({a, b});
        CHECK(direct.at(lag) == (it == truth.end() ? 0 : it->second));
        nonzero += direct.at(lag) != 0;
      }
    }
    CHECK(nonzero == static_cast<std::int64_t>(truth.size()));
    const std::int64_t ones = 6 * (s % 2 ? 7 : 6);
    CHECK(direct.total() == ones * ones);
  }
}

TEST_CASE("separable window equals the transform of the 2D weights") {
  const FrequencyGrid g{64};
  const auto rows = nyquist_pattern(6);
  const auto cols = exsca_pattern(4, 3, 3);
  const PatternND p{{rows, cols}};
  const BiasWindow w[] = {simulated_bias(weight_function(rows.support()), {g}),
                          simulated_bias(weight_function(cols.support()), {g})};
  const auto sep = bias_nd(w);
  const auto direct = simulated_bias_nd(weight_nd(p), g);
  CHECK(max_abs_deviation(sep, direct) < 1e-8);
  CHECK(max_abs_deviation(sep.peak_normalized(), direct.peak_normalized()) < 1e-12);
  for (double v : direct.values.data()) CHECK(v > -1e-9);

  const BiasWindow mixed[] = {w[0], simulated_bias(weight_function(cols.support()), {FrequencyGrid{32}})};
  CHECK_THROWS_AS(bias_nd(mixed), ConfigError);
  CHECK_THROWS_AS(bias_nd(std::span<const BiasWindow>(w, 1)), ConfigError);
}

TEST_CASE("even shifts image the origin at (1, 1)") {
  const FrequencyGrid g{64};
  for (int s = 0; s <= 5; ++s) {
    CAPTURE(s);
    const PatternND p{{exsca_pattern(4, 3, s), exsca_pattern(4, 3, s)}};
    const auto w = simulated_bias_nd(weight_nd(p), g);
    const std::size_t origin[] = {0, 0};
    const std::size_t image_bin[] = {g.size / 2, g.size / 2};
    if (s % 2 == 0) {
      CHECK(w.values.at(image_bin) == doctest::Approx(w.values.at(origin)));
    } else {
      CHECK(w.values.at(image_bin) < 0.5 * w.values.at(origin));
    }
  }
}

TEST_CASE("three-dimensional extension") {
  const PatternND p2{{nyquist_pattern(3), exsca_pattern(2, 3, 1)}};
  const PatternND p3 = extend(p2, exsca_pattern(3, 2, 2));
  CHECK(p3.dims() == 3);
  CHECK(p3.shape() == std::vector<std::size_t>{3, 12, 12});
  const auto z = weight_nd(p3);
  CHECK(z == weight_outer(p3));
  const auto n = static_cast<std::int64_t>(p3.points().size());
  CHECK(z.total() == n * n);
  const auto w = simulated_bias_nd(z, FrequencyGrid{16});
  for (double v : w.values.data()) CHECK(v > -1e-9);
}

TEST_CASE("circular peak matching") {
  CHECK(worst_match_distance({{1.99, 0.0}}, {{0.01, 0.0}}) == doctest::Approx(0.02));
  CHECK(worst_match_distance({{0.1, 0.5}, {0.3, 0.0}}, {{0.3, 0.01}, {0.1, 0.48}}) == doctest::Approx(0.02));
  CHECK(worst_match_distance({{0.1, 0.1}}, {{0.1, 0.1}, {0.6, 0.1}}) == doctest::Approx(0.5));
}

TEST_CASE("2D peak search") {
  SpectrumND flat{FrequencyGrid{8}, NDArray<double>({8, 8}, 1.0)};
  CHECK_THROWS_AS(find_peaks_nd(flat, 1), PeakSearchError);

  SpectrumND s{FrequencyGrid{8}, NDArray<double>({8, 8}, 0.0)};
  const std::size_t a[] = {1, 2}, b[] = {7, 7}, c[] = {4, 0};
  s.power.at(a) = 3;
  s.power.at(b) = 4;
  s.power.at(c) = 1;
  const auto two = find_peaks_nd(s, 2);
  CHECK(two == std::vector<std::vector<double>>{{0.25, 0.5}, {1.75, 1.75}});
  CHECK(find_peaks_nd(s, 3).size() == 3);
}

TEST_CASE("2D estimation finds separated peaks") {
  const std::vector<std::vector<double>> truth{{0.1, 0.2}, {0.3, 0.55}, {0.7, 0.4}};
  const PatternND p{{exsca_pattern(4, 3, 1), exsca_pattern(4, 3, 1)}};
  const FrequencyGrid g{128};
  const auto spec = estimate_spectrum_nd(p, SignalModelND{truth, {}, 0.0, 2}, 25, g);
  const auto found = find_peaks_nd(spec, truth.size());
  CHECK(worst_match_distance(found, truth) < 2 * g.step());
  CHECK(estimate_spectrum_nd(p, SignalModelND{truth, {}, 0.0, 2}, 25, g).power == spec.power);
  CHECK_THROWS_AS((SignalModelND{{{0.1}}}.validate(2)), ConfigError);
  CHECK_THROWS_AS((SignalModelND{{{0.1, 1.0}}}.validate(2)), ConfigError);
}

TEST_CASE("2D estimate is conjugate symmetric and matches the weights") {
  const PatternND p{{nyquist_pattern(4), exsca_pattern(3, 2, 1)}};
  const auto snaps = sample_pattern_nd(SignalModelND{{{0.2, 0.3}}, {}, 0.1, 4}, p, 5);
  const auto z = weight_nd(p);
  const auto est = estimate_autocorrelation_nd(snaps, z);
  for (std::size_t f = 0; f < est.values.size(); ++f) {
    CHECK(est.values[f] == std::conj(est.values[est.values.size() - 1 - f]));
    if (z.counts[f] == 0) CHECK(est.values[f] == Complex{});
  }
}
