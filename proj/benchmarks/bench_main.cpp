#include <benchmark/benchmark.h>

#include "coprime/closedform.hpp"
#include "coprime/multidim.hpp"
#include "coprime/spectral.hpp"

using namespace coprime;

namespace {

void BM_UnionWeights(benchmark::State& state) {
  const ElementSet u = positions_apca(ApcaConfig{CoPrimePair(29, 27), 13}).combined;
  for (auto _ : state) benchmark::DoNotOptimize(weight_function(u));
}
BENCHMARK(BM_UnionWeights);

void BM_ClosedWeights(benchmark::State& state) {
  const CoPrimePair pair(29, 27);
  const auto pivot = pivot_location(ExscaConfig{pair, 26});
  for (auto _ : state) benchmark::DoNotOptimize(weight_closed_exsca(pair, 26, pivot));
}
BENCHMARK(BM_ClosedWeights);

void BM_ClosedWindow(benchmark::State& state) {
  const CoPrimePair pair(7, 6);
  const FrequencyGrid g{static_cast<std::size_t>(state.range(0))};
  const auto pivot = pivot_location(ExscaConfig{pair, 4});
  for (auto _ : state) benchmark::DoNotOptimize(bias_closed_exsca(pair, 4, pivot, {g}));
}
BENCHMARK(BM_ClosedWindow)->Arg(1024)->Arg(4096);

void BM_SimulatedWindow(benchmark::State& state) {
  const auto z = weight_function(positions_exsca(ExscaConfig{CoPrimePair(7, 6), 4}).combined);
  const FrequencyGrid g{static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(simulated_bias(z, {g}));
}
BENCHMARK(BM_SimulatedWindow)->Arg(1024)->Arg(4096);

void BM_EstimateTrial(benchmark::State& state) {
  const ElementSet u = positions_apca(ApcaConfig{CoPrimePair(4, 3), 2}).combined;
  const SignalModel m{{0.1, 0.3, 0.6}};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_spectrum(u, 12, m, 10));
}
BENCHMARK(BM_EstimateTrial);

void BM_Transform2D(benchmark::State& state) {
  const auto col = pattern_from_union(positions_exsca(ExscaConfig{CoPrimePair(4, 3), 3}).combined, 24);
  const WeightND z = weight_nd(PatternND{{nyquist_pattern(24), col}});
  const FrequencyGrid g{static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(simulated_bias_nd(z, g));
}
BENCHMARK(BM_Transform2D)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
