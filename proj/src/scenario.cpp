#include "gamowlab/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "gamowlab/corpus.hpp"
#include "gamowlab/gamow_dynamics.hpp"
#include "gamowlab/kaon_twolevel.hpp"
#include "gamowlab/spectral_expansion.hpp"
#include "gamowlab/wigner_symmetry.hpp"
#include "json.hpp"

namespace gamowlab {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

cplx parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_object() && j.contains("re")) {
    return {j.at("re").get<double>(), j.value("im", 0.0)};
  }
  throw ValidationError("config: " + where + " is not a number, [re, im] or {re, im}");
}

std::vector<cplx> parse_coefficients(const json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError("config: " + where + " must be an array");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_complex(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass() const { return value <= tolerance; }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<Check> checks;
};

double tol(const ScenarioConfig& c, const std::string& name) {
  auto it = c.tolerances.find(name);
  if (it != c.tolerances.end()) return it->second;
  const auto d = default_tolerances();
  auto jt = d.find(name);
  if (jt == d.end()) throw ValidationError("unknown tolerance '" + name + "'");
  return jt->second;
}

void push_complex(std::vector<double>& row, cplx z) {
  row.push_back(z.real());
  row.push_back(z.imag());
}

void add_complex_columns(std::vector<std::string>& cols, const std::string& name) {
  cols.push_back("re_" + name);
  cols.push_back("im_" + name);
}

std::string render_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt(row[i]);
    os << "\n";
  }
  return os.str();
}

ordered_json number(double v) { return std::isnan(v) ? ordered_json(nullptr) : ordered_json(v); }

ordered_json checks_json(const std::vector<Check>& checks) {
  ordered_json out = ordered_json::array();
  for (const auto& c : checks) {
    out.push_back({{"name", c.name}, {"value", number(c.value)}, {"tolerance", c.tolerance},
                   {"pass", c.pass()}});
  }
  return out;
}

std::string render_json(const Table& t, ScenarioKind kind) {
  ordered_json doc;
  doc["scenario"] = to_string(kind);
  doc["columns"] = t.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json r = ordered_json::array();
    for (double v : row) r.push_back(number(v));
    rows.push_back(r);
  }
  doc["rows"] = rows;
  // Paired re_/im_ columns regrouped as complex series.
  ordered_json parts = ordered_json::object();
  for (std::size_t c = 0; c + 1 < t.columns.size(); ++c) {
    const std::string& a = t.columns[c];
    if (a.rfind("re_", 0) != 0 || t.columns[c + 1] != "im_" + a.substr(3)) continue;
    ordered_json series = ordered_json::array();
    for (const auto& row : t.rows) series.push_back({number(row[c]), number(row[c + 1])});
    parts[a.substr(3)] = series;
  }
  doc["parts"] = parts;
  doc["checks"] = checks_json(t.checks);
  return doc.dump(2) + "\n";
}

void write_artifact(const ScenarioConfig& c, const std::string& text) {
  if (c.output_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(c.output_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output '" + c.output_path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to '" + c.output_path + "' failed");
}

void enforce(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (!c.pass()) {
      throw ToleranceError(c.name, "check " + c.name + " value " + fmt(c.value) +
                                       " exceeds tolerance " + fmt(c.tolerance));
    }
  }
}

SMatrixModel config_model(const ScenarioConfig& c) { return SMatrixModel(c.poles); }

const WaveSpec* find_wave(const ScenarioConfig& c, const std::string& name,
                          const std::string& role) {
  if (!name.empty()) {
    auto it = c.waves.find(name);
    if (it == c.waves.end()) throw ValidationError("config: wave '" + name + "' not defined");
    if (it->second.role != role) {
      throw ValidationError("config: wave '" + name + "' does not have role " + role);
    }
    return &it->second;
  }
  for (const auto& [n, w] : c.waves) {
    if (w.role == role) return &w;
  }
  return nullptr;
}

ObservableWave config_probe(const ScenarioConfig& c) {
  const WaveSpec* w = find_wave(c, c.probe, "observable");
  if (!w) return corpus_wave_pair("broad").probe;
  return ObservableWave::from_coefficients(w->num, w->den);
}

StateWave config_state(const ScenarioConfig& c) {
  const WaveSpec* w = find_wave(c, c.state, "state");
  if (!w) return corpus_wave_pair("broad").state;
  return StateWave::from_coefficients(w->num, w->den);
}

const ResonancePole& first_pole(const ScenarioConfig& c) {
  if (c.poles.empty()) throw ValidationError("config: scenario requires at least one pole");
  return c.poles.front();
}

Table run_decay(const ScenarioConfig& c) {
  const ResonancePole& pole = first_pole(c);
  const ObservableWave probe = config_probe(c);
  const GamowKet ket(pole);
  const cplx F0 = evolve_gamow_pairing(probe, ket, 0.0);
  if (F0 == cplx(0.0)) throw ValidationError("decay: probe functional F0 vanishes");
  Table t;
  t.columns = {"t", "re", "im", "abs2"};
  double worst = 0.0;
  for (double time : c.time_grid.times()) {
    const cplx a = evolve_gamow_pairing(probe, ket, time) / F0;
    const double abs2 = std::norm(a);
    t.rows.push_back({time, a.real(), a.imag(), abs2});
    const double law = survival_probability(pole, time);
    worst = std::max(worst, std::abs(abs2 - law) / law);
  }
  t.checks.push_back({"decay_law", worst, tol(c, "decay_law")});
  return t;
}

Table run_jordan(const ScenarioConfig& c) {
  const ResonancePole& pole = first_pole(c);
  const int N = c.jordan_N > 0 ? c.jordan_N : pole.order;
  const cplx z = pole.z_R();
  Table t;
  t.columns.push_back("t");
  for (int k = 0; k < N; ++k) {
    for (int l = 0; l < N; ++l) add_complex_columns(t.columns, "U" + std::to_string(k) + std::to_string(l));
  }
  const auto times = c.time_grid.times();
  double worst = 0.0;
  Eigen::MatrixXcd prev;
  double prev_t = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto U = jordan_evolution_matrix(N, z, times[i]).entries;
    std::vector<double> row{times[i]};
    for (int k = 0; k < N; ++k) {
      for (int l = 0; l < N; ++l) push_complex(row, U(k, l));
    }
    t.rows.push_back(row);
    if (i > 0) {
      const auto step = jordan_evolution_matrix(N, z, times[i] - prev_t).entries;
      const double scale = U.cwiseAbs().maxCoeff();
      worst = std::max(worst, (prev * step - U).cwiseAbs().maxCoeff() / scale);
    }
    prev = U;
    prev_t = times[i];
  }
  t.checks.push_back({"semigroup", worst, tol(c, "semigroup")});
  return t;
}

Table run_expansion(const ScenarioConfig& c) {
  const SMatrixModel model = config_model(c);
  const ObservableWave probe = config_probe(c);
  const StateWave state = config_state(c);
  const ExpansionResult r = complex_expand(probe, state, model, c.contour);
  const auto times = c.time_grid.times();
  const AmplitudeSeries series = expanded_series(r, times);
  const bool with_direct = c.time_grid.t_max <= kDefaultDirectTmax;
  std::vector<cplx> direct(times.size(), kNaN);
  if (with_direct) {
    parallel_for(static_cast<int>(times.size()),
                 [&](int i) { direct[i] = amplitude_direct(probe, state, model, times[i]); });
  }
  Table t;
  t.columns.push_back("t");
  add_complex_columns(t.columns, "total");
  for (std::size_t i = 0; i < model.poles().size(); ++i) {
    add_complex_columns(t.columns, "pole" + std::to_string(i));
  }
  add_complex_columns(t.columns, "background");
  add_complex_columns(t.columns, "direct");
  double worst = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto& p = series.parts[i];
    std::vector<double> row{times[i]};
    push_complex(row, p.total);
    for (const cplx x : p.poles) push_complex(row, x);
    push_complex(row, p.background);
    push_complex(row, direct[i]);
    t.rows.push_back(row);
    if (with_direct) worst = std::max(worst, std::abs(p.total - direct[i]) / std::abs(direct[i]));
  }
  const double pair_scale = std::max(std::abs(r.pairing), 1e-300);
  t.checks.push_back({"completeness", r.completeness_residual / pair_scale, tol(c, "completeness")});
  if (with_direct) t.checks.push_back({"oracle_equivalence", worst, tol(c, "oracle_equivalence")});
  return t;
}

Table run_kaon(const ScenarioConfig& c) {
  const TwoLevelConfig k =
      TwoLevelConfig::from_waves(config_model(c), config_probe(c), config_state(c), c.contour);
  const auto times = c.time_grid.times();
  std::vector<TwoLevelParts> parts(times.size());
  parallel_for(static_cast<int>(times.size()), [&](int i) { parts[i] = exact_amplitude(k, times[i]); });
  Table t;
  t.columns.push_back("t");
  for (const char* name : {"exact", "L", "S", "background", "effective"}) add_complex_columns(t.columns, name);
  t.columns.push_back("deficit");
  t.columns.push_back("ratio");
  const double g = k.pole_S().gamma();
  double worst = 0.0;
  int violations = 0;
  double prev_ratio = -1.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto& p = parts[i];
    const cplx eff = effective_amplitude(k, times[i]);
    std::vector<double> row{times[i]};
    for (const cplx x : {p.total, p.L, p.S, p.background, eff}) push_complex(row, x);
    row.push_back(std::abs(p.background));
    double ratio = kNaN;
    if (times[i] >= 5.0 / g) {
      ratio = std::abs(p.background) * std::exp(0.5 * g * times[i]) / std::abs(k.b_S() * k.F_S());
      if (prev_ratio >= 0.0 && !(ratio > prev_ratio)) ++violations;
      prev_ratio = ratio;
    }
    row.push_back(ratio);
    t.rows.push_back(row);
    worst = std::max(worst, std::abs(p.total - (eff + p.background)) / std::abs(p.total));
  }
  t.checks.push_back({"kaon_decomposition", worst, tol(c, "kaon_decomposition")});
  t.checks.push_back({"late_time_ratio_monotone", double(violations), 0.0});
  return t;
}

ordered_json ket_json(const TaggedKet& k) {
  ordered_json j;
  j["space"] = to_string(k.space);
  j["r"] = k.r;
  j["two_m"] = k.two_m;
  j["phase"] = {k.phase.real(), k.phase.imag()};
  if (k.gamow) {
    j["gamow"] = {{"kind", to_string(k.gamow->kind)},
                  {"eigenvalue", {k.gamow->eigenvalue().real(), k.gamow->eigenvalue().imag()}},
                  {"r", to_string(k.gamow->r)}};
  }
  return j;
}

std::string run_symmetry(const ScenarioConfig& c) {
  const ExtensionCase ec = build_extension(c.row, c.two_j);
  const RelationReport rep = check_relations(ec, spin_rep(c.two_j), tol(c, "extension_relations"));
  ordered_json doc;
  doc["scenario"] = "symmetry";
  doc["row"] = ec.row;
  doc["two_j"] = ec.two_j;
  doc["j"] = 0.5 * ec.two_j;
  doc["basis"] = ec.doubled ? "m = j..-j, r = + block first" : "m = j..-j";
  doc["dimension"] = ec.dim();
  doc["eps_T"] = rep.eps_T;
  doc["eps_I"] = rep.eps_I;
  doc["eps_T_measured"] = rep.eps_T_measured;
  doc["eps_I_measured"] = rep.eps_I_measured;
  ordered_json checks = ordered_json::array();
  for (const auto& ch : rep.checks) {
    checks.push_back({{"name", ch.name}, {"deviation", ch.deviation},
                      {"pass", ch.deviation <= rep.tolerance}});
  }
  doc["tolerance"] = rep.tolerance;
  doc["checks"] = checks;
  // Tag map on the highest-weight basis ket of a state and of a decaying
  // Gamow ket.
  ordered_json tags = ordered_json::array();
  const int r0 = ec.doubled ? 1 : 0;
  std::vector<TaggedKet> samples;
  samples.push_back({Space::phi_minus, r0, ec.two_j, 1.0, corpus_wave_pair("broad").state.f(), {}});
  if (!c.poles.empty()) {
    samples.push_back({Space::phi_plus_dual, r0, ec.two_j, 1.0, {}, GamowKet(c.poles.front())});
  }
  for (const auto& k : samples) {
    const TaggedKet once = transform_ket(ec, k);
    const TaggedKet twice = transform_ket(ec, once);
    tags.push_back({{"from", ket_json(k)}, {"to", ket_json(once)}, {"twice", ket_json(twice)}});
  }
  doc["tag_map"] = tags;
  doc["pass"] = rep.pass;
  if (!rep.pass) {
    write_artifact(c, doc.dump(2) + "\n");
    throw ToleranceError("extension_relations", "symmetry relations failed for row " + std::to_string(c.row));
  }
  return doc.dump(2) + "\n";
}

std::string run_selftest(const ScenarioConfig& c, std::string& failing) {
  std::map<std::string, double> t = default_tolerances();
  for (const auto& [k, v] : c.tolerances) {
    if (!t.count(k)) throw ValidationError("unknown tolerance '" + k + "'");
    t[k] = v;
  }
  std::ostringstream os;
  for (const auto& ch : selftest(t)) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s %-32s value=%.6e tolerance=%.6e\n", ch.pass ? "PASS" : "FAIL",
                  ch.name.c_str(), ch.value, ch.tolerance);
    os << buf;
    if (!ch.pass && failing.empty()) failing = ch.name;
  }
  return os.str();
}

}  // namespace

ScenarioKind parse_scenario_kind(const std::string& name) {
  for (auto k : {ScenarioKind::decay, ScenarioKind::jordan, ScenarioKind::expansion,
                 ScenarioKind::kaon, ScenarioKind::symmetry, ScenarioKind::selftest}) {
    if (name == to_string(k)) return k;
  }
  throw ValidationError("unknown scenario '" + name + "'");
}

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::decay:
      return "decay";
    case ScenarioKind::jordan:
      return "jordan";
    case ScenarioKind::expansion:
      return "expansion";
    case ScenarioKind::kaon:
      return "kaon";
    case ScenarioKind::symmetry:
      return "symmetry";
    case ScenarioKind::selftest:
      return "selftest";
  }
  return "?";
}

std::vector<double> TimeGrid::times() const {
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw ValidationError("time_grid: t_max must be >= 0");
  if (steps < 1) throw ValidationError("time_grid: steps must be >= 1");
  std::vector<double> out;
  if (!log_spacing) {
    for (int i = 0; i <= steps; ++i) out.push_back(t_max * i / steps);
    return out;
  }
  const double lo = t_min > 0.0 ? t_min : t_max / 1000.0;
  if (!(lo > 0.0 && lo < t_max)) throw ValidationError("time_grid: log spacing needs 0 < t_min < t_max");
  out.push_back(0.0);
  for (int i = 0; i < steps; ++i) {
    out.push_back(i + 1 == steps ? t_max : lo * std::pow(t_max / lo, double(i) / (steps - 1)));
  }
  if (steps == 1) out.back() = t_max;
  return out;
}

std::map<std::string, double> default_tolerances() {
  return {
      {"unimodularity", 1e-12},
      {"mirror_symmetry", 1e-11},
      {"pole_zero_pairing", 1e-10},
      {"jordan_exactness", 1e-10},
      {"semigroup", 1e-11},
      {"decay_law", 1e-12},
      {"hamiltonian_chain", 1e-12},
      {"completeness", 1e-7},
      {"oracle_equivalence", 1e-6},
      {"power_law_stability", 0.1},
      {"deformation_independence", 1e-7},
      {"pole_term_purity", 1e-12},
      {"kaon_decomposition", 1e-12},
      {"extension_relations", 1e-12},
      {"reciprocity", 1e-10},
  };
}

ScenarioConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config: top level must be an object");
  ScenarioConfig c;
  try {
    if (doc.contains("scenario")) c.scenario = parse_scenario_kind(doc.at("scenario").get<std::string>());
    if (doc.contains("model")) {
      for (const auto& p : doc.at("model")) {
        c.poles.emplace_back(cplx(p.at("re_w").get<double>(), p.at("im_w").get<double>()),
                             p.value("order", 1));
      }
    }
    if (doc.contains("waves")) {
      for (const auto& [name, w] : doc.at("waves").items()) {
        WaveSpec s;
        s.role = w.at("role").get<std::string>();
        if (s.role != "state" && s.role != "observable") {
          throw ValidationError("config: wave '" + name + "' role must be state or observable");
        }
        s.num = parse_coefficients(w.at("num"), "waves." + name + ".num");
        s.den = parse_coefficients(w.at("den"), "waves." + name + ".den");
        // Validate against the role now so errors name the wave.
        try {
          if (s.role == "state") {
            StateWave::from_coefficients(s.num, s.den);
          } else {
            ObservableWave::from_coefficients(s.num, s.den);
          }
        } catch (const ValidationError& e) {
          throw ValidationError("config: wave '" + name + "': " + e.what());
        }
        c.waves[name] = std::move(s);
      }
    }
    c.probe = doc.value("probe", std::string{});
    c.state = doc.value("state", std::string{});
    if (doc.contains("time_grid")) {
      const auto& g = doc.at("time_grid");
      c.time_grid.t_max = g.value("t_max", c.time_grid.t_max);
      c.time_grid.steps = g.value("steps", c.time_grid.steps);
      c.time_grid.t_min = g.value("t_min", 0.0);
      const std::string spacing = g.value("spacing", std::string("linear"));
      if (spacing != "linear" && spacing != "log") {
        throw ValidationError("config: time_grid.spacing must be linear or log");
      }
      c.time_grid.log_spacing = spacing == "log";
    }
    if (doc.contains("contour")) {
      const auto& p = doc.at("contour");
      c.contour.angle = p.value("theta", c.contour.angle);
      c.contour.s_max = p.value("s_max", c.contour.s_max);
      c.contour.node_count = p.value("nodes", c.contour.node_count);
      c.contour.validate();
    }
    if (doc.contains("tolerances")) {
      const auto known = default_tolerances();
      for (const auto& [k, v] : doc.at("tolerances").items()) {
        if (!known.count(k)) throw ValidationError("config: unknown tolerance '" + k + "'");
        c.tolerances[k] = v.get<double>();
      }
    }
    if (doc.contains("output")) {
      const auto& o = doc.at("output");
      c.output_path = o.value("path", std::string{});
      c.format = o.value("format", c.format);
    }
    if (doc.contains("jordan")) c.jordan_N = doc.at("jordan").value("N", 0);
    if (doc.contains("symmetry")) {
      const auto& s = doc.at("symmetry");
      c.row = s.value("row", c.row);
      const double j = s.value("j", 0.5 * c.two_j);
      c.two_j = static_cast<int>(std::lround(2.0 * j));
      if (std::abs(2.0 * j - c.two_j) > 1e-12) throw ValidationError("config: j must be a half-integer");
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: schema error: ") + e.what());
  }
  if (c.format != "csv" && c.format != "json") throw ValidationError("config: format must be csv or json");
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

RunOutcome run(const ScenarioConfig& c, std::ostream& log) {
  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    std::string line = kind + ": " + msg;
    for (char& ch : line) {
      if (ch == '\n' || ch == '\r') ch = ' ';
    }
    log << "error: " << line << "\n";
    return RunOutcome{code, line};
  };
  try {
    if (c.scenario == ScenarioKind::selftest) {
      std::string failing;
      write_artifact(c, run_selftest(c, failing));
      if (!failing.empty()) return fail(2, "tolerance", "check " + failing + " failed");
      return {};
    }
    if (c.scenario == ScenarioKind::symmetry) {
      write_artifact(c, run_symmetry(c));
      return {};
    }
    Table t;
    switch (c.scenario) {
      case ScenarioKind::decay:
        t = run_decay(c);
        break;
      case ScenarioKind::jordan:
        t = run_jordan(c);
        break;
      case ScenarioKind::expansion:
        t = run_expansion(c);
        break;
      case ScenarioKind::kaon:
        t = run_kaon(c);
        break;
      default:
        break;
    }
    write_artifact(c, c.format == "json" ? render_json(t, c.scenario) : render_csv(t));
    enforce(t.checks);
    return {};
  } catch (const ToleranceError& e) {
    return fail(2, "tolerance", "check " + e.check() + ": " + e.what());
  } catch (const IoError& e) {
    return fail(3, "io", e.what());
  } catch (const ValidationError& e) {
    return fail(1, "validation", e.what());
  } catch (const SemigroupDomainError& e) {
    return fail(1, "semigroup-domain", e.what());
  } catch (const NumericalError& e) {
    return fail(2, "numerical", e.what());
  }
}

}  // namespace gamowlab
