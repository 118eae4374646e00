#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "coprime/experiment.hpp"
#include "coprime/export.hpp"

using namespace coprime;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

const Artifact* find_file(const RunResult& r, const std::string& name) {
  for (const auto& a : r.files) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

Json three_comb_config() {
  return Json::parse(R"({
    "family": "generalized",
    "shifts": "2:13",
    "subarrays": [
      {"count": 2, "spacing_base": 15, "compression": 1, "sparsity": 3, "periods": 3, "shift": 0},
      {"count": 3, "spacing_base": 10, "compression": 1, "sparsity": 2, "periods": 2, "shift": 1},
      {"count": 5, "spacing_base": 6, "compression": 1, "sparsity": 1, "periods": 1, "shift": 2}
    ]})");
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-2.5) == "-2.5");
  const double x = 0.1 + 0.2;
  CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("csv writers") {
  std::ostringstream w;
  write_weights_csv(w, weight_function(ElementSet::from_subarray({0, 1, 3}, 0)));
  CHECK(lines(w.str()) == std::vector<std::string>{"lag,count", "-3,1", "-2,1", "-1,1", "0,3", "1,1", "2,1", "3,1"});

  std::ostringstream s;
  write_spectrum_csv(s, Spectrum{FrequencyGrid{4}, {1.0, 0.5, 0.0, 0.25}});
  CHECK(lines(s.str()) == std::vector<std::string>{"f,power", "0,1", "0.5,0.5", "1,0", "1.5,0.25"});

  std::ostringstream win;
  write_window_csv(win, BiasWindow{FrequencyGrid{4}, {4.0, 2.0, 0.0, 2.0}});
  CHECK(lines(win.str())[0] == "f,value,normalized");
  CHECK(lines(win.str())[2] == "0.5,2,0.5");

  NDArray<double> a({2, 2});
  a[3] = 7;
  std::ostringstream g;
  write_grid_csv(g, a);
  CHECK(lines(g.str()) == std::vector<std::string>{"i,j,value", "0,0,0", "0,1,0", "1,0,0", "1,1,7"});
  CHECK(matrix_json(a).dump() == "[[0.0,0.0],[0.0,7.0]]");
}

TEST_CASE("geometry json") {
  const ApcaConfig cfg{CoPrimePair(4, 3), 2};
  const Json j = geometry_json("apca", Json{{"M", 4}}, positions_apca(cfg), pivot_location(cfg));
  CHECK(j["pivot"] == Json::array({2, 2}));
  CHECK(j["union"] == Json::array({0, 2, 4, 5, 8, 11}));
  CHECK(j["subarrays"].size() == 2);
  REQUIRE(j["overlaps"].size() == 1);
  CHECK(j["overlaps"][0]["position"] == 8);
  const Json k = geometry_json("exsca", Json::object(), positions_exsca(ExscaConfig{CoPrimePair(4, 3), 3}),
                               std::nullopt);
  CHECK(k["pivot"].is_null());
}

TEST_CASE("config parsing") {
  CHECK_THROWS_AS(parse_config(Json{{"family", "apca"}, {"M", 4}, {"N", 3}, {"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(parse_config(Json{{"family", "apca"}, {"M", "four"}, {"N", 3}}), ConfigError);
  CHECK_THROWS_AS(parse_config(Json{{"family", "nope"}}), ConfigError);
  CHECK_THROWS_AS(parse_config(Json{{"family", "apca"}, {"M", 4}, {"N", 2}}), ConfigError);
  CHECK_THROWS_AS(parse_config(Json{{"family", "apca"}, {"M", 4}, {"N", 3}, {"seed", -1}}), ConfigError);

  const auto c = parse_config(Json{{"family", "exsca"}, {"M", 4}, {"N", 3}, {"shifts", "1:3"}});
  CHECK(c.shift_list() == std::vector<int>{1, 2, 3});
  CHECK(c.snapshot_count() == kDefaultSnapshots1D);
  CHECK(c.frequency_grid().size == kDefaultGridSize);

  const auto h = parse_config(Json{{"family", "hybrid2d"}, {"M", 4}, {"N", 3}});
  CHECK(h.peaks.front().size() == 2);
  CHECK(h.snapshot_count() == kDefaultSnapshots2D);
  CHECK(h.frequency_grid().size == kDefaultGrid2D);

  const auto g = parse_config(three_comb_config());
  CHECK(g.subarrays.size() == 3);
  CHECK(g.shift_list().size() == 12);
}

TEST_CASE("shift ranges") {
  CHECK(parse_shift_range("2:5").first == 2);
  CHECK(parse_shift_range("2:5").last == 5);
  CHECK(parse_shift_range("4").last == 4);
  CHECK_THROWS_AS(parse_shift_range("5:2"), ConfigError);
  CHECK_THROWS_AS(parse_shift_range("a:b"), ConfigError);
  CHECK_THROWS_AS(parse_shift_range(""), ConfigError);
}

TEST_CASE("config merge and round trip") {
  const Json merged = merge_config(Json{{"M", 4}, {"N", 3}, {"trials", 5}}, Json{{"trials", 7}, {"family", "apca"}});
  CHECK(merged["trials"] == 7);
  CHECK(merged["M"] == 4);
  const auto c = parse_config(merged);
  const auto again = parse_config(config_to_json(c));
  CHECK(config_to_json(again) == config_to_json(c));
}

TEST_CASE("output directory precedence") {
  ExperimentConfig c;
  CHECK(resolve_output_dir(std::nullopt, c, nullptr) == "coprime_out");
  CHECK(resolve_output_dir(std::nullopt, c, "env_dir") == "env_dir");
  c.output_dir = "cfg_dir";
  CHECK(resolve_output_dir(std::nullopt, c, "env_dir") == "cfg_dir");
  CHECK(resolve_output_dir(std::string("flag_dir"), c, "env_dir") == "flag_dir");
}

TEST_CASE("design reports") {
  const auto one = run_design(parse_config(Json{{"family", "apca"}, {"M", 4}, {"N", 3}, {"shift", 2}}));
  CHECK(one.report["pivot"] == Json::array({2, 2}));
  CHECK(one.report["period"] == 12);
  const auto odd = run_design(parse_config(Json{{"family", "exsca"}, {"M", 4}, {"N", 3}, {"shift", 3}}));
  CHECK(odd.report["pivot"].is_null());
  const auto many = run_design(parse_config(Json{{"family", "apca"}, {"M", 4}, {"N", 3}, {"shifts", "0:2"}}));
  CHECK(many.report["designs"].size() == 3);
  CHECK_FALSE(many.inapplicable);
}

TEST_CASE("analysis of the adjustable array") {
  const auto run = run_analyze(parse_config(Json{{"family", "apca"}, {"M", 4}, {"N", 3}, {"shifts", "0:2"}}));
  const auto& res = run.report["results"];
  REQUIRE(res.size() == 3);
  const std::size_t unique[] = {17, 19, 21};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(res[i]["unique_count"] == unique[i]);
    CHECK(res[i]["closed_form"]["route"] == "apca_via_exsca");
    CHECK(res[i]["closed_form"]["weights_match"] == true);
    CHECK(res[i]["closed_form"]["window_max_abs_dev"].get<double>() < 1e-9);
  }
  CHECK(run.files.size() == 9);
  REQUIRE(find_file(run, "window_s1.csv") != nullptr);
  CHECK(lines(find_file(run, "window_s1.csv")->text).size() == kDefaultGridSize + 1);
  CHECK(run.report["inapplicable_shifts"].empty());
}

TEST_CASE("analysis reports inapplicable generalized shifts") {
  const auto run = run_analyze(parse_config(three_comb_config()));
  CHECK(run.inapplicable);
  CHECK(run.report["inapplicable_shifts"] == Json::array({3, 9}));
  for (const auto& e : run.report["results"]) {
    const bool hit = e["shift"] == 3 || e["shift"] == 9;
    CHECK(e["closed_form"]["applicable"] == !hit);
    if (hit) CHECK(e["closed_form"]["overlaps"][0]["position"] == 21);
  }
  const auto design = run_design(parse_config(three_comb_config()));
  CHECK(design.inapplicable);
}

TEST_CASE("analysis of the hybrid 2D pattern") {
  Json j{{"family", "hybrid2d"}, {"M", 4}, {"N", 3}, {"shifts", "0:1"}, {"row_pattern", "exsca"}, {"grid", 64}};
  const auto run = run_analyze(parse_config(j));
  const auto& res = run.report["results"];
  REQUIRE(res.size() == 2);
  for (const auto& e : res) {
    CHECK(e["weights_separable"] == true);
    CHECK(e["window_max_abs_dev"].get<double>() < 1e-8);
  }
  CHECK(res[0]["image_at_one_one"].get<double>() == doctest::Approx(res[0]["value_at_origin"].get<double>()));
  CHECK(res[1]["image_at_one_one"].get<double>() < res[1]["value_at_origin"].get<double>());
}

TEST_CASE("estimation is reproducible and writes spectra") {
  Json j{{"family", "apca"}, {"M", 4}, {"N", 3}, {"shift", 2}, {"trials", 8}, {"grid", 512}};
  const auto a = run_estimate(parse_config(j));
  const auto b = run_estimate(parse_config(j));
  CHECK(a.report.dump() == b.report.dump());
  REQUIRE(find_file(a, "spectrum_s2.csv") != nullptr);
  CHECK(find_file(a, "spectrum_s2.csv")->text == find_file(b, "spectrum_s2.csv")->text);
  CHECK(a.report["results"][0]["period"] == 12);

  j["peaks"] = Json::array({Json::array({0.1, 0.2})});
  CHECK_THROWS_AS(run_estimate(parse_config(j)), ConfigError);
}

TEST_CASE("artifacts land in the output directory") {
  const auto dir = std::filesystem::temp_directory_path() / "coprime_unit_artifacts";
  std::filesystem::remove_all(dir);
  const auto run = run_design(parse_config(Json{{"family", "apca"}, {"M", 4}, {"N", 3}, {"shift", 1}}));
  write_artifacts(dir / "nested", run, "geometry.json");
  std::ifstream in(dir / "nested" / "geometry.json");
  CHECK(Json::parse(in)["pivot"] == Json::array({1, 1}));
  std::filesystem::remove_all(dir);
}
