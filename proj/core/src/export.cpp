#include "coprime/export.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

namespace coprime {

namespace {

std::string axis_name(std::size_t d, char base) {
  static constexpr char kNames[] = {'i', 'j', 'k'};
  if (base == 'i' && d < 3) return std::string(1, kNames[d]);
  return std::string(1, base) + std::to_string(d + 1);
}

Json positions_json(const ElementSet& s) {
  Json arr = Json::array();
  for (Position p : s.positions()) arr.push_back(p);
  return arr;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return {buf, res.ptr};
}

Json overlaps_json(const std::vector<Overlap>& overlaps) {
  Json arr = Json::array();
  for (const auto& o : overlaps) {
    arr.push_back(Json{{"position", o.position}, {"subarrays", o.subarrays}});
  }
  return arr;
}

Json geometry_json(const std::string& family, const Json& params, const Layout& layout,
                   std::optional<PivotIndex> pivot) {
  Json j;
  j["family"] = family;
  j["params"] = params;
  Json subs = Json::array();
  for (const auto& s : layout.subarrays) subs.push_back(positions_json(s));
  j["subarrays"] = std::move(subs);
  j["union"] = positions_json(layout.combined);
  j["pivot"] = pivot ? Json::array({pivot->n, pivot->m}) : Json(nullptr);
  j["overlaps"] = overlaps_json(detect_overlap(layout.subarrays));
  return j;
}

void write_weights_csv(std::ostream& os, const WeightFunction& z) {
  os << "lag,count\n";
  for (Lag l : z.support()) os << l << ',' << z.at(l) << '\n';
}

void write_window_csv(std::ostream& os, const BiasWindow& w) {
  const BiasWindow n = w.peak_normalized();
  os << "f,value,normalized\n";
  for (std::size_t k = 0; k < w.values.size(); ++k) {
    os << format_number(w.frequency(k)) << ',' << format_number(w.values[k]) << ','
       << format_number(n.values[k]) << '\n';
  }
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s) {
  os << "f,power\n";
  for (std::size_t k = 0; k < s.power.size(); ++k) {
    os << format_number(s.grid.at(k)) << ',' << format_number(s.power[k]) << '\n';
  }
}

void write_grid_csv(std::ostream& os, const NDArray<double>& a) {
  for (std::size_t d = 0; d < a.dims(); ++d) os << axis_name(d, 'i') << ',';
  os << "value\n";
  for (std::size_t f = 0; f < a.size(); ++f) {
    for (std::size_t i : a.unflat(f)) os << i << ',';
    os << format_number(a[f]) << '\n';
  }
}

void write_weight_nd_csv(std::ostream& os, const WeightND& z) {
  for (std::size_t d = 0; d < z.extent.size(); ++d) os << axis_name(d, 'l') << ',';
  os << "count\n";
  for (std::size_t f = 0; f < z.counts.size(); ++f) {
    if (z.counts[f] == 0) continue;
    const auto idx = z.counts.unflat(f);
    for (std::size_t d = 0; d < idx.size(); ++d) os << static_cast<Lag>(idx[d]) - z.extent[d] << ',';
    os << z.counts[f] << '\n';
  }
}

Json matrix_json(const NDArray<double>& a) {
  const auto& shape = a.shape();
  // Build from the innermost axis outwards.
  std::vector<Json> level;
  level.reserve(a.size());
  for (double v : a.data()) level.emplace_back(v);
  for (std::size_t d = shape.size(); d-- > 0;) {
    std::vector<Json> next;
    for (std::size_t i = 0; i < level.size(); i += shape[d]) {
      Json row = Json::array();
      for (std::size_t k = 0; k < shape[d]; ++k) row.push_back(std::move(level[i + k]));
      next.push_back(std::move(row));
    }
    level = std::move(next);
  }
  return level.empty() ? Json::array() : level.front();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace coprime
