#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gamowlab/momentum_plane.hpp"
#include "gamowlab/smatrix_model.hpp"

namespace gamowlab {

enum class ScenarioKind { decay, jordan, expansion, kaon, symmetry, selftest };

ScenarioKind parse_scenario_kind(const std::string& name);
const char* to_string(ScenarioKind k);

struct TimeGrid {
  double t_max = 20.0;
  int steps = 40;
  bool log_spacing = false;
  double t_min = 0.0;  // first positive time for log spacing; 0 selects t_max / 1000

  std::vector<double> times() const;
};

struct WaveSpec {
  std::string role;  // "state" or "observable"
  std::vector<cplx> num;
  std::vector<cplx> den;
};

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::selftest;
  std::vector<ResonancePole> poles;
  std::map<std::string, WaveSpec> waves;
  std::string probe;  // observable wave name; empty selects the first observable
  std::string state;  // state wave name; empty selects the first state
  TimeGrid time_grid;
  DeformedPath contour;
  std::map<std::string, double> tolerances;
  std::string output_path;  // empty writes to stdout
  std::string format = "csv";
  int jordan_N = 0;  // 0 selects the order of the first pole
  int row = 4;
  int two_j = 1;
};

// Parses a JSON document. Schema errors raise ValidationError.
ScenarioConfig parse_config(const std::string& json_text);
// IoError when the file cannot be read.
ScenarioConfig load_config(const std::string& path);

// Named tolerances with their defaults; config entries override them.
std::map<std::string, double> default_tolerances();

struct RunOutcome {
  int exit_code = 0;
  std::string reason;  // single line, empty on success
};

// Executes the scenario and writes the artifact. Exit codes: 0 success,
// 1 validation, 2 tolerance or numerical failure, 3 I/O.
RunOutcome run(const ScenarioConfig& config, std::ostream& log);

// Invariant suite over the canonical corpus; one line per check.
struct SelftestCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

std::vector<SelftestCheck> selftest(const std::map<std::string, double>& tolerances);

}  // namespace gamowlab
