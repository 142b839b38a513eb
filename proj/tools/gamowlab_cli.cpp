#include <cmath>
#include <iostream>

#include "CLI11.hpp"
#include "gamowlab/scenario.hpp"

using namespace gamowlab;

int main(int argc, char** argv) {
  CLI::App app{"gamowlab: resonance, Gamow-vector and time-reversal scenarios"};
  std::string config_path, output, format, scenario;
  double tmax = -1.0, j = -1.0;
  int steps = -1, row = -1;
  app.add_option("--config", config_path, "scenario config (JSON)");
  app.add_option("--output", output, "artifact path; stdout when omitted");
  app.add_option("--format", format, "csv or json");
  app.add_option("--scenario", scenario, "decay|jordan|expansion|kaon|symmetry|selftest");
  app.add_option("--tmax", tmax, "last time of the grid");
  app.add_option("--steps", steps, "number of grid intervals");
  app.add_option("--case", row, "extension row 1..4 for the symmetry scenario");
  app.add_option("--j", j, "spin j (half-integer) for the symmetry scenario");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: validation: " << e.what() << "\n";
    return 1;
  }

  ScenarioConfig config;
  try {
    if (!config_path.empty()) config = load_config(config_path);
    if (!scenario.empty()) config.scenario = parse_scenario_kind(scenario);
    if (!output.empty()) config.output_path = output;
    if (!format.empty()) {
      if (format != "csv" && format != "json") throw ValidationError("--format must be csv or json");
      config.format = format;
    }
    if (tmax >= 0.0) config.time_grid.t_max = tmax;
    if (steps >= 0) config.time_grid.steps = steps;
    if (row >= 0) config.row = row;
    if (j >= 0.0) {
      config.two_j = static_cast<int>(std::lround(2.0 * j));
      if (std::abs(2.0 * j - config.two_j) > 1e-12) throw ValidationError("--j must be a half-integer");
    }
  } catch (const IoError& e) {
    std::cerr << "error: io: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: validation: " << e.what() << "\n";
    return 1;
  }
  return run(config, std::cerr).exit_code;
}
