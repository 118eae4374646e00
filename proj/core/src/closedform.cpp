#include "coprime/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace coprime {

namespace {

constexpr double kPi = std::numbers::pi;

// cos(pi * t) with t reduced modulo 2 first.
double cos_pi(double t) noexcept {
  double r = std::fmod(t, 2.0);
  if (r < 0) r += 2.0;
  return std::cos(kPi * r);
}

void add_folded(std::map<Lag, std::int64_t>& z, Lag c, std::int64_t weight) {
  z[c] += weight;
  if (c != 0) z[-c] += weight;
}

void check_exsca_shift(const CoPrimePair& pair, int shift) {
  if (shift < 0 || shift > 2 * pair.N() - 1) {
    throw ConfigError("closed form for E=2 requires 0 <= s <= 2N-1");
  }
}

WeightFunction checked(const std::map<Lag, std::int64_t>& z) {
  for (const auto& [lag, c] : z) {
    if (c < 0) throw std::logic_error("closed-form weight went negative");
  }
  return WeightFunction::from_counts(z);
}

void require_no_overlap(const GeneralizedConfig& cfg) {
  const Layout layout = positions_generalized(cfg);
  auto overlaps = detect_overlap(layout.subarrays);
  if (!overlaps.empty()) throw ClosedFormInapplicable(std::move(overlaps));
}

}  // namespace

BiasWindow BiasWindow::peak_normalized() const {
  BiasWindow out = *this;
  if (values.empty()) return out;
  const double peak = *std::max_element(values.begin(), values.end());
  if (!(peak > 0)) throw std::domain_error("window has no positive peak");
  for (double& v : out.values) v /= peak;
  out.normalization = Normalization::peak_unit;
  return out;
}

double max_abs_deviation(const BiasWindow& a, const BiasWindow& b) {
  if (a.grid != b.grid || a.values.size() != b.values.size()) {
    throw ConfigError("windows are sampled on different grids");
  }
  double d = 0;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    d = std::max(d, std::abs(a.values[k] - b.values[k]));
  }
  return d;
}

int fold(int x, int X) {
  if (X < 1 || x < 0 || x > X - 1) throw std::out_of_range("fold argument outside [0, X-1]");
  return x <= (X - 1) / 2 ? x : X - 1 - x;
}

std::vector<int> fold_table(int X) {
  std::vector<int> out(static_cast<std::size_t>(std::max(X, 0)));
  for (int i = 0; i < X; ++i) out[static_cast<std::size_t>(i)] = fold(i, X);
  return out;
}

std::size_t unique_count_exsca(const CoPrimePair& pair, int shift, std::size_t mirror_count) {
  check_exsca_shift(pair, shift);
  const long long M = pair.M();
  const long long N = pair.N();
  long long count = 2 * M * N - static_cast<long long>(mirror_count);
  if (shift % 2 != 0) {
    count += 2 * (M + N - 1) - 1;
  } else {
    const auto pivot = pivot_location(ExscaConfig{pair, shift, 2});
    if (!pivot) throw std::logic_error("even shift without a pivot");
    count += 2 * (fold(pivot->n, pair.N()) + fold(pivot->m, pair.M()));
  }
  return static_cast<std::size_t>(count);
}

LagInterval cross_extent(const CoPrimePair& pair, int shift, int sparsity) {
  const Lag E = sparsity;
  return {-(E * pair.N() * (pair.M() - 1) + shift), E * pair.M() * (pair.N() - 1) - shift};
}

Lag cross_reach(const CoPrimePair& pair, int shift, int sparsity) {
  const Lag E = sparsity;
  const Lag a = E * pair.N() * (pair.M() - 1) + shift;
  const Lag b = E * pair.M() * (pair.N() - 1) - shift;
  // a wins when M + s > N (E = 2); both agree when M + s = N.
  return std::max(a, b);
}

Lag coarray_reach(const CoPrimePair& pair, int shift, int sparsity) {
  const Lag E = sparsity;
  return std::max({cross_reach(pair, shift, sparsity), E * pair.M() * (pair.N() - 1),
                   E * pair.N() * (pair.M() - 1)});
}

std::vector<Lag> mirror_pairs_characterized(const CoPrimePair& pair, int shift, int sparsity) {
  const int M = pair.M();
  const int N = pair.N();
  const Lag E = sparsity;
  std::set<Lag> out;
  for (int n1 = 0; n1 < N; ++n1) {
    for (int m1 = 0; m1 < M; ++m1) {
      const Lag l = E * M * n1 - (E * N * m1 + shift);
      if (n1 == 0 && m1 == 0 && shift == 0) {
        out.insert(l);
        continue;
      }
      bool mirrored = false;
      for (int n2 = 0; n2 < N && !mirrored; ++n2) {
        if (n1 + n2 == 0) continue;
        for (int m2 = 0; m2 < M && !mirrored; ++m2) {
          mirrored = E * (Lag{M} * (n1 + n2) - Lag{N} * (m1 + m2)) == 2 * Lag{shift};
        }
      }
      if (mirrored) out.insert(l);
    }
  }
  return {out.begin(), out.end()};
}

WeightFunction weight_closed_exsca(const CoPrimePair& pair, int shift,
                                   std::optional<PivotIndex> pivot) {
  check_exsca_shift(pair, shift);
  const Lag M = pair.M();
  const Lag N = pair.N();
  std::map<Lag, std::int64_t> z;
  // A, B: self triangles.
  for (Lag n = -(N - 1); n <= N - 1; ++n) z[2 * M * n] += N - std::abs(n);
  for (Lag m = -(M - 1); m <= M - 1; ++m) z[2 * N * m] += M - std::abs(m);
  // C: every cross difference folded onto +/-.
  for (Lag n = 0; n < N; ++n) {
    for (Lag m = 0; m < M; ++m) add_folded(z, 2 * M * n - (2 * N * m + shift), 1);
  }
  // D: pivot row and column duplicate self differences.
  if (pivot) {
    for (Lag m = 0; m < M; ++m) add_folded(z, 2 * M * pivot->n - (2 * N * m + shift), -1);
    for (Lag n = 0; n < N; ++n) add_folded(z, 2 * M * n - (2 * N * pivot->m + shift), -1);
  }
  return checked(z);
}

WeightFunction weight_piecewise_exsca(const CoPrimePair& pair, int shift) {
  check_exsca_shift(pair, shift);
  const Lag M = pair.M();
  const Lag N = pair.N();
  const bool odd = shift % 2 != 0;

  std::set<Lag> self;
  std::map<Lag, std::int64_t> z;
  for (Lag n = 1; n < N; ++n) {
    z[2 * M * n] = z[-2 * M * n] = N - n;
    self.insert({2 * M * n, -2 * M * n});
  }
  for (Lag m = 1; m < M; ++m) {
    z[2 * N * m] = z[-2 * N * m] = M - m;
    self.insert({2 * N * m, -2 * N * m});
  }
  self.insert(0);
  z[0] = odd ? M + N : M + N - 1;

  const std::vector<Lag> mirrors = mirror_pairs_characterized(pair, shift, 2);
  std::set<Lag> cross;
  for (Lag n = 0; n < N; ++n) {
    for (Lag m = 0; m < M; ++m) {
      const Lag c = 2 * M * n - (2 * N * m + shift);
      cross.insert({c, -c});
    }
  }
  for (Lag l : cross) {
    if (self.contains(l)) continue;
    z[l] = std::binary_search(mirrors.begin(), mirrors.end(), l) ? 2 : 1;
  }
  return WeightFunction::from_counts(z);
}

WeightFunction weight_closed_subarray(const SubarraySpec& spec) {
  spec.validate();
  const Lag R = spec.element_count();
  std::map<Lag, std::int64_t> z;
  for (Lag n = -(R - 1); n <= R - 1; ++n) z[spec.stride() * n] += R - std::abs(n);
  return WeightFunction::from_counts(z);
}

WeightFunction weight_closed_generalized(const GeneralizedConfig& cfg) {
  require_no_overlap(cfg);
  std::map<Lag, std::int64_t> z;
  const auto& subs = cfg.subarrays;
  for (const auto& s : subs) {
    for (const auto& [lag, c] : weight_closed_subarray(s).to_map()) z[lag] += c;
  }
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (std::size_t k = i + 1; k < subs.size(); ++k) {
      for (Lag ni = 0; ni < subs[i].element_count(); ++ni) {
        for (Lag nk = 0; nk < subs[k].element_count(); ++nk) {
          const Lag d = subs[i].stride() * ni + subs[i].shift - (subs[k].stride() * nk + subs[k].shift);
          add_folded(z, d, 1);
        }
      }
    }
  }
  return checked(z);
}

double dirichlet_ratio(double t, long n) noexcept {
  const double k = std::nearbyint(t);
  const double delta = t - k;
  // (-1)^{k (n-1)}
  const bool negate = std::fmod(std::abs(k), 2.0) == 1.0 && (n - 1) % 2 != 0;
  const double sign = negate ? -1.0 : 1.0;
  if (std::abs(delta) < 1e-12) return sign * static_cast<double>(n);
  return sign * std::sin(static_cast<double>(n) * kPi * delta) / std::sin(kPi * delta);
}

BiasWindow bias_closed_exsca(const CoPrimePair& pair, int shift,
                             std::optional<PivotIndex> pivot, const WindowOptions& opt) {
  check_exsca_shift(pair, shift);
  opt.grid.validate();
  const double M = pair.M();
  const double N = pair.N();
  const double s = shift;
  BiasWindow w{opt.grid, std::vector<double>(opt.grid.size), Normalization::raw};
  for (std::size_t k = 0; k < opt.grid.size; ++k) {
    const double f = opt.grid.at(k);
    const double a = dirichlet_ratio(f * M, pair.N());  // sin(wMN)/sin(wM)
    const double b = dirichlet_ratio(f * N, pair.M());  // sin(wMN)/sin(wN)
    double v = a * a + b * b + 2.0 * cos_pi(f * (M - N + s)) * a * b;
    if (pivot) {
      const double row = cos_pi(f * (2 * M * pivot->n - M * N + N - s));
      const double col = cos_pi(f * (2 * N * pivot->m - M * N + M + s));
      v -= 2.0 * (b * row + a * col) - 1.0;
    }
    w.values[k] = v / opt.scale;
  }
  return w;
}

BiasWindow bias_closed_generalized(const GeneralizedConfig& cfg, const WindowOptions& opt) {
  require_no_overlap(cfg);
  opt.grid.validate();
  const auto& subs = cfg.subarrays;
  BiasWindow w{opt.grid, std::vector<double>(opt.grid.size), Normalization::raw};
  std::vector<double> amp(subs.size());
  for (std::size_t k = 0; k < opt.grid.size; ++k) {
    const double f = opt.grid.at(k);
    double v = 0;
    for (std::size_t i = 0; i < subs.size(); ++i) {
      amp[i] = dirichlet_ratio(f * static_cast<double>(subs[i].stride()) / 2.0,
                               subs[i].element_count());
      v += amp[i] * amp[i];
    }
    for (std::size_t i = 0; i < subs.size(); ++i) {
      for (std::size_t j = i + 1; j < subs.size(); ++j) {
        const Lag si = subs[i].stride();
        const Lag sj = subs[j].stride();
        // Twice the phase centre offset between the two combs (an integer).
        const Lag twice = si * subs[i].element_count() - sj * subs[j].element_count() - (si - sj) +
                          2 * (Lag{subs[i].shift} - subs[j].shift);
        v += amp[i] * amp[j] * 2.0 * cos_pi(f * static_cast<double>(twice) / 2.0);
      }
    }
    w.values[k] = v / opt.scale;
  }
  return w;
}

BiasWindow simulated_bias(const WeightFunction& z, const WindowOptions& opt) {
  opt.grid.validate();
  const PhaseTable phase(opt.grid.size);
  const auto counts = z.to_map();
  BiasWindow w{opt.grid, std::vector<double>(opt.grid.size), Normalization::raw};
  for (std::size_t k = 0; k < opt.grid.size; ++k) {
    double v = 0;
    for (const auto& [lag, c] : counts) v += static_cast<double>(c) * phase.cos(k, lag);
    w.values[k] = v / opt.scale;
  }
  return w;
}

BiasWindow nyquist_bias(std::size_t length, const WindowOptions& opt) {
  if (length < 1) throw ConfigError("Nyquist window length must be >= 1");
  opt.grid.validate();
  BiasWindow w{opt.grid, std::vector<double>(opt.grid.size), Normalization::raw};
  for (std::size_t k = 0; k < opt.grid.size; ++k) {
    const double r = dirichlet_ratio(opt.grid.at(k) / 2.0, static_cast<long>(length));
    w.values[k] = r * r / opt.scale;
  }
  return w;
}

double relative_amplitude(const BiasWindow& w) {
  const std::size_t half = w.grid.size / 2;
  if (w.values.size() != w.grid.size || half < 2) {
    throw std::domain_error("window too short for lobe analysis");
  }
  // Window is even in f, so the neighbour past f = 1 mirrors the one before.
  auto at = [&](std::size_t k) { return k > half ? w.values[2 * half - k] : w.values[k]; };
  std::size_t k = 0;
  while (k < half && at(k + 1) <= at(k)) ++k;
  const double main_peak = at(0);
  std::optional<double> side;
  for (std::size_t j = k + 1; j <= half; ++j) {
    if (at(j) > at(j - 1) && at(j) >= at(j + 1)) {
      if (!side || at(j) > *side) side = at(j);
    }
  }
  if (!side) throw std::domain_error("window has no side lobe");
  if (!(main_peak > 0)) throw std::domain_error("window main lobe is not positive");
  return (main_peak - *side) / main_peak;
}

}  // namespace coprime
