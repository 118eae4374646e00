#pragma once

// Plain-text artifacts: geometry and reports as JSON, curves as CSV. Number
// formatting is locale-independent and round-trips, so identical inputs
// produce identical bytes.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coprime/closedform.hpp"
#include "coprime/geometry.hpp"
#include "coprime/multidim.hpp"
#include "coprime/spectral.hpp"

namespace coprime {

using Json = nlohmann::ordered_json;

/// Shortest decimal form that parses back to the same double.
std::string format_number(double v);

/// {family, params, subarrays, union, pivot, overlaps}; pivot is [n, m] or null.
Json geometry_json(const std::string& family, const Json& params, const Layout& layout,
                   std::optional<PivotIndex> pivot);

Json overlaps_json(const std::vector<Overlap>& overlaps);

/// lag,count for every lag with a nonzero count.
void write_weights_csv(std::ostream& os, const WeightFunction& z);

/// f,value,normalized over the whole grid.
void write_window_csv(std::ostream& os, const BiasWindow& w);

/// f,power over the whole grid.
void write_spectrum_csv(std::ostream& os, const Spectrum& s);

/// i,j[,k...],value with zero-based grid indices; frequency is 2 i / G.
void write_grid_csv(std::ostream& os, const NDArray<double>& a);

/// l1,l2[,l3...],count for every nonzero lag of the box.
void write_weight_nd_csv(std::ostream& os, const WeightND& z);

/// Nested arrays, outermost index first.
Json matrix_json(const NDArray<double>& a);

/// Writes `text` to `path`, creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace coprime
