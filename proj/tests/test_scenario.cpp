#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gamowlab/scenario.hpp"

using namespace gamowlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "gamowlab_scenario_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

const char* kDecay = R"({
  "scenario": "decay",
  "model": [{"re_w": 1.0, "im_w": -0.05}],
  "waves": {"probe": {"role": "observable", "num": [1], "den": [[-3, -4], [2, -4], 1]}},
  "time_grid": {"t_max": 20, "steps": 40}
})";

}  // namespace

TEST_CASE("scenario names round trip") {
  for (auto k : {ScenarioKind::decay, ScenarioKind::jordan, ScenarioKind::expansion, ScenarioKind::kaon,
                 ScenarioKind::symmetry, ScenarioKind::selftest}) {
    CHECK(parse_scenario_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_scenario_kind("bogus"), ValidationError);
}

TEST_CASE("time grids") {
  TimeGrid lin{10.0, 5, false, 0.0};
  auto t = lin.times();
  REQUIRE(t.size() == 6);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == 10.0);
  TimeGrid lg{100.0, 4, true, 1.0};
  auto u = lg.times();
  REQUIRE(u.size() == 5);
  CHECK(u[0] == 0.0);
  CHECK(u[1] == doctest::Approx(1.0));
  CHECK(u[2] == doctest::Approx(std::pow(10.0, 2.0 / 3.0)));
  CHECK(u[4] == doctest::Approx(100.0));
  CHECK_THROWS_AS((TimeGrid{10.0, 0, false, 0.0}.times()), ValidationError);
  CHECK_THROWS_AS((TimeGrid{10.0, 3, true, 20.0}.times()), ValidationError);
}

TEST_CASE("config parsing") {
  auto c = parse_config(kDecay);
  CHECK(c.scenario == ScenarioKind::decay);
  REQUIRE(c.poles.size() == 1);
  CHECK(c.poles[0].w_R == cplx(1.0, -0.05));
  CHECK(c.waves.at("probe").den[0] == cplx(-3, -4));
  CHECK(c.format == "csv");

  CHECK_THROWS_AS(parse_config("{"), ValidationError);
  CHECK_THROWS_AS(parse_config("[]"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "nope"})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "decay", "tolerances": {"made_up": 1}})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "decay", "output": {"format": "xml"}})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "symmetry", "symmetry": {"j": 0.3}})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "decay", "model": [{"re_w": 1, "im_w": 0.1}]})"),
                  ValidationError);
  CHECK_THROWS_AS(load_config("/nonexistent/dir/config.json"), IoError);
}

TEST_CASE("default tolerances are positive") {
  for (const auto& [k, v] : default_tolerances()) {
    INFO(k);
    CHECK(v > 0.0);
  }
}

TEST_CASE("decay scenario writes the exponential law") {
  auto c = parse_config(kDecay);
  c.output_path = scratch("decay.csv").string();
  std::ostringstream log;
  auto outcome = run(c, log);
  REQUIRE(outcome.exit_code == 0);
  auto rows = csv_rows(slurp(c.output_path));
  REQUIRE(rows.size() == 42);
  CHECK(rows[0] == std::vector<std::string>{"t", "re", "im", "abs2"});
  const double G = c.poles[0].gamma();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double t = std::stod(rows[i][0]);
    CHECK(std::abs(std::stod(rows[i][3]) - std::exp(-G * t)) <= 1e-12);
  }
}

TEST_CASE("jordan scenario starts at the identity") {
  auto c = parse_config(R"({"scenario": "jordan", "model": [{"re_w": 1.0, "im_w": -0.05, "order": 3}],
                           "time_grid": {"t_max": 5, "steps": 5}})");
  c.output_path = scratch("jordan.csv").string();
  std::ostringstream log;
  REQUIRE(run(c, log).exit_code == 0);
  auto rows = csv_rows(slurp(c.output_path));
  REQUIRE(rows.size() == 7);
  CHECK(rows[0].size() == 1 + 2 * 9);
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      const std::size_t col = 1 + 2 * (3 * k + l);
      CHECK(std::stod(rows[1][col]) == (k == l ? 1.0 : 0.0));
      CHECK(std::stod(rows[1][col + 1]) == 0.0);
    }
  }
}

TEST_CASE("symmetry scenario reports the row epsilons") {
  auto c = parse_config(R"({"scenario": "symmetry", "symmetry": {"row": 4, "j": 0.5}})");
  c.output_path = scratch("symmetry.json").string();
  std::ostringstream log;
  REQUIRE(run(c, log).exit_code == 0);
  const std::string text = slurp(c.output_path);
  CHECK(text.find("\"eps_T\": 1") != std::string::npos);
  CHECK(text.find("\"eps_I\": 1") != std::string::npos);
}

TEST_CASE("run maps failures to exit codes") {
  std::ostringstream log;
  auto bad_tol = parse_config(R"({"scenario": "selftest", "tolerances": {"completeness": 1e-20}})");
  bad_tol.output_path = scratch("selftest_bad.txt").string();
  auto o2 = run(bad_tol, log);
  CHECK(o2.exit_code == 2);
  CHECK(o2.reason.find("completeness") != std::string::npos);

  auto no_poles = parse_config(R"({"scenario": "decay"})");
  CHECK(run(no_poles, log).exit_code == 1);

  auto c = parse_config(kDecay);
  c.output_path = "/nonexistent/dir/out.csv";
  CHECK(run(c, log).exit_code == 3);
}

TEST_CASE("selftest passes on the default tolerances") {
  auto checks = selftest(default_tolerances());
  CHECK(checks.size() >= 15);
  for (const auto& ch : checks) {
    INFO(ch.name);
    CHECK(ch.pass);
  }
}
