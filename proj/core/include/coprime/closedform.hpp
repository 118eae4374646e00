#pragma once

// Analytic expressions for extremely sparse co-prime arrays: fold functions,
// coarray extents and unique counts, closed-form weight functions and their
// correlogram bias windows, and the relative side-lobe amplitude metric.
//
// Frequencies are normalized, f = omega / pi, on the grid f_k = 2k/G.

#include <optional>
#include <vector>

#include "coprime/diffset.hpp"
#include "coprime/frequency.hpp"
#include "coprime/geometry.hpp"

namespace coprime {

enum class Normalization { raw, peak_unit };

/// A real window sampled on a FrequencyGrid.
struct BiasWindow {
  FrequencyGrid grid;
  std::vector<double> values;
  Normalization normalization = Normalization::raw;

  double frequency(std::size_t k) const noexcept { return grid.at(k); }
  /// Copy scaled so the largest value is 1.
  BiasWindow peak_normalized() const;
};

/// Largest absolute elementwise difference; grids must agree.
double max_abs_deviation(const BiasWindow& a, const BiasWindow& b);

// ---------------------------------------------------------------------------
// Fold function and counts

/// x for x <= floor((X-1)/2), X-1-x above. Throws std::out_of_range when
/// x is outside [0, X-1].
int fold(int x, int X);

/// fold(i, X) for i = 0..X-1.
std::vector<int> fold_table(int X);

/// Unique lag count of an E=2 array from the mirror-pair cardinality:
/// odd s: 2MN - #Lp + 2(M+N-1) - 1; even s: 2MN - #Lp + 2(f(n_p) + f(m_p)).
std::size_t unique_count_exsca(const CoPrimePair& pair, int shift, std::size_t mirror_count);

/// Closed interval of lags.
struct LagInterval {
  Lag lo = 0;
  Lag hi = 0;

  friend bool operator==(const LagInterval&, const LagInterval&) = default;
};

/// Range of E M n - (E N m + s): [-(E N (M-1) + s), E M (N-1) - s].
LagInterval cross_extent(const CoPrimePair& pair, int shift, int sparsity);

/// max(E M (N-1) - s, E N (M-1) + s), the reach of the signed cross set.
Lag cross_reach(const CoPrimePair& pair, int shift, int sparsity);

/// max(cross_reach, E M (N-1), E N (M-1)), the reach of the whole set.
Lag coarray_reach(const CoPrimePair& pair, int shift, int sparsity);

/// Mirror-pair lags from the integer characterization
/// E (M (n1 + n2) - N (m1 + m2)) = 2 s, plus the origin when s = 0.
std::vector<Lag> mirror_pairs_characterized(const CoPrimePair& pair, int shift, int sparsity);

// ---------------------------------------------------------------------------
// Weight functions

/// Four-term closed form for E = 2: self triangles on 2Mn and 2Nm, the
/// folded cross terms, minus the pivot row and column when a pivot is given.
/// Requires 0 <= s <= 2N-1.
WeightFunction weight_closed_exsca(const CoPrimePair& pair, int shift,
                                   std::optional<PivotIndex> pivot);

/// Piecewise description for E = 2 (self lags, origin, mirror pairs with two
/// contributors, remaining cross lags with one).
WeightFunction weight_piecewise_exsca(const CoPrimePair& pair, int shift);

/// Self term of one subarray: (R - |n|) at lag stride * n, R = periods * count.
WeightFunction weight_closed_subarray(const SubarraySpec& spec);

/// Sum of subarray self terms and pairwise folded cross terms. Throws
/// ClosedFormInapplicable when subarrays share a position.
WeightFunction weight_closed_generalized(const GeneralizedConfig& cfg);

// ---------------------------------------------------------------------------
// Bias windows

struct WindowOptions {
  FrequencyGrid grid{};
  /// The 1/s_b factor is applied as division by `scale`.
  double scale = 1.0;
};

/// sin(n pi t) / sin(pi t) with the removable singularities at integer t
/// replaced by their limit n (-1)^{t (n-1)}.
double dirichlet_ratio(double t, long n) noexcept;

/// Closed-form window of the E = 2 array; the pivot bracket is applied only
/// when `pivot` is set (even s).
BiasWindow bias_closed_exsca(const CoPrimePair& pair, int shift,
                             std::optional<PivotIndex> pivot, const WindowOptions& opt = {});

/// Closed-form window of the generalized array. Throws
/// ClosedFormInapplicable when subarrays share a position.
BiasWindow bias_closed_generalized(const GeneralizedConfig& cfg, const WindowOptions& opt = {});

/// Direct transform of a weight function: sum_l z(l) cos(pi f l).
BiasWindow simulated_bias(const WeightFunction& z, const WindowOptions& opt = {});

/// Transform of the triangle L - |l|, the dense (Nyquist) sampler window.
BiasWindow nyquist_bias(std::size_t length, const WindowOptions& opt = {});

// ---------------------------------------------------------------------------
// Relative amplitude

/// (P_m - P_s) / P_m with P_m the value at f = 0 and P_s the largest local
/// maximum beyond the first local minimum, searched over f in [0, 1].
/// Throws std::domain_error if no side lobe exists.
double relative_amplitude(const BiasWindow& w);

}  // namespace coprime
