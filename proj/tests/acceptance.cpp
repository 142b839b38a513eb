// Release gate: one PASS/FAIL line per acceptance criterion.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gamowlab/corpus.hpp"
#include "gamowlab/gamow_dynamics.hpp"
#include "gamowlab/kaon_twolevel.hpp"
#include "gamowlab/spectral_expansion.hpp"
#include "gamowlab/wigner_symmetry.hpp"
#include "oracles.hpp"

using namespace gamowlab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string note;
};

double rel_entry(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Eigen::MatrixXcd generator(int N, cplx z, double t) {
  Eigen::MatrixXcd H = z * Eigen::MatrixXcd::Identity(N, N);
  for (int k = 1; k < N; ++k) H(k, k - 1) = 1.0;
  return cplx(0.0, -t) * H;
}

double max_rel(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  double m = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c <= r; ++c) m = std::max(m, rel_entry(a(r, c), b(r, c)));
    for (Eigen::Index c = r + 1; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  }
  return m;
}

cplx random_pole_energy(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> re(0.1, 3.0), im(-0.5, -0.001);
  return {re(rng), im(rng)};
}

Outcome jordan_exactness() {
  std::mt19937_64 rng(20240101);
  std::uniform_real_distribution<double> tt(0.0, 50.0);
  double worst = 0.0;
  for (int N = 1; N <= 6; ++N) {
    for (int i = 0; i < 10; ++i) {
      const cplx z = random_pole_energy(rng);
      const double t = tt(rng);
      worst = std::max(worst, max_rel(jordan_evolution_matrix(N, z, t).entries,
                                       oracle::expm(generator(N, z, t))));
    }
  }
  return {worst <= 1e-10, worst, 1e-10, "60 (N, z, t) samples"};
}

Outcome semigroup() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> tt(0.0, 25.0);
  std::uniform_int_distribution<int> nn(1, 6);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int N = nn(rng);
    const cplx z = random_pole_energy(rng);
    const double t1 = tt(rng), t2 = tt(rng);
    const auto a = jordan_evolution_matrix(N, z, t1).entries;
    const auto b = jordan_evolution_matrix(N, z, t2).entries;
    worst = std::max(worst, max_rel(a * b, jordan_evolution_matrix(N, z, t1 + t2).entries));
  }
  int refused = 0;
  const auto& probe = corpus_wave_pair("broad").probe;
  std::uniform_real_distribution<double> neg(-30.0, -1e-9);
  for (int i = 0; i < 20; ++i) {
    const double t = neg(rng);
    try {
      if (i % 2 == 0) {
        evolve_gamow_pairing(probe, GamowKet(ResonancePole(cplx(1.2, -0.1), 2), i % 4 / 2), t);
      } else {
        jordan_evolution_matrix(1 + i % 6, random_pole_energy(rng), t);
      }
    } catch (const SemigroupDomainError&) {
      ++refused;
    }
  }
  const bool ok = worst <= 1e-11 && refused == 20;
  return {ok, worst, 1e-11, "t < 0 refused " + std::to_string(refused) + "/20"};
}

Outcome decay_law() {
  double worst = 0.0;
  for (const char* name : {"narrow", "wide"}) {
    const auto& p = corpus_model(name).model.poles()[0];
    for (const auto& wp : corpus_wave_pairs()) {
      GamowKet k(p);
      const double i0 = std::norm(evolve_gamow_pairing(wp.probe, k, 0.0));
      for (int i = 1; i <= 40; ++i) {
        const double t = 0.5 * i;
        const double ratio = std::norm(evolve_gamow_pairing(wp.probe, k, t)) / i0;
        const double expected = std::exp(-p.gamma() * t);
        worst = std::max(worst, std::abs(ratio - expected) / expected);
      }
    }
  }
  return {worst <= 1e-12, worst, 1e-12, "relative, 40 times, narrow and wide"};
}

Outcome hamiltonian_chain() {
  const auto& m = corpus_model("order2").model;
  double worst = 0.0;
  for (const auto& p : m.poles()) {
    if (p.order != 2) continue;
    for (const auto& wp : corpus_wave_pairs()) {
      const auto K = reflect(wp.probe);
      const auto EK = poly_times(Polynomial({0.0, 0.0, 1.0}), K);
      const SheetedEnergy z{p.z_R(), Sheet::II};
      const auto F = gamow_functionals(K, z, 4);
      const auto G = gamow_functionals(EK, z, 4);
      for (int k = 0; k <= 3; ++k) {
        const cplx lhs = p.z_R() * F[k] + (k > 0 ? F[k - 1] : cplx(0.0));
        worst = std::max(worst, rel_entry(lhs, G[k]));
      }
      for (int k = 0; k < p.order; ++k) {
        worst = std::max(worst, rel_entry(hamiltonian_action(wp.probe, GamowKet(p, k)), G[k]));
      }
    }
  }
  return {worst <= 1e-12, worst, 1e-12, "kets k < 2, functionals k <= 3"};
}

Outcome expansion_oracle() {
  double worst = 0.0, residual = 0.0;
  for (const auto& cm : corpus_models()) {
    for (const auto& wp : corpus_wave_pairs()) {
      const auto r = complex_expand(wp.probe, wp.state, cm.model);
      residual = std::max(residual, r.completeness_residual);
      for (double t : {0.0, 1.0, 5.0, 20.0}) {
        const cplx direct = amplitude_direct(wp.probe, wp.state, cm.model, t);
        worst = std::max(worst, rel_entry(amplitude_expanded(r, t).total, direct));
      }
    }
  }
  const bool ok = worst <= 1e-6 && residual <= 1e-7;
  char buf[96];
  std::snprintf(buf, sizeof buf, "completeness residual %.3e (tolerance 1e-7)", residual);
  return {ok, worst, 1e-6, buf};
}

double fitted_exponent(const ExpansionResult& r, double a, double b, int n) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double t = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
    const double x = std::log(t), y = std::log(std::abs(background_amplitude(r, t)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome background_tail() {
  bool monotone = true;
  double spread = 0.0;
  bool positive = true;
  for (const auto& cm : corpus_models()) {
    const double G = cm.model.gamma_min();
    for (const auto& wp : corpus_wave_pairs()) {
      const auto r = complex_expand(wp.probe, wp.state, cm.model);
      double prev = 0.0;
      for (int i = 0; i < 20; ++i) {
        const double t = (5.0 / G) * std::pow(10.0, i / 19.0);
        const double v = std::abs(background_amplitude(r, t)) * std::exp(0.5 * G * t);
        if (i > 0 && !(v > prev)) monotone = false;
        prev = v;
      }
      const double lo = 50.0 / G, mid = lo * std::sqrt(10.0), hi = 500.0 / G;
      const double q1 = fitted_exponent(r, lo, mid, 10), q2 = fitted_exponent(r, mid, hi, 10);
      positive = positive && q1 > 0 && q2 > 0;
      spread = std::max(spread, std::abs(q1 - q2) / (0.5 * (q1 + q2)));
    }
  }
  const bool ok = monotone && positive && spread <= 0.1;
  return {ok, spread, 0.1,
          std::string("monotone ") + (monotone ? "yes" : "no") + ", exponent spread over the last decade"};
}

Outcome kaon_decomposition() {
  double worst = 0.0;
  bool increasing = true;
  for (const auto& wp : corpus_wave_pairs()) {
    const auto c = TwoLevelConfig::from_waves(corpus_model("kaon").model, wp.probe, wp.state);
    const double GS = c.pole_S().gamma();
    for (int i = 0; i <= 40; ++i) {
      const double t = 5.0 * i;
      const auto p = exact_amplitude(c, t);
      worst = std::max(worst, std::abs(p.total - (effective_amplitude(c, t) + p.background)) /
                                  std::abs(p.total));
    }
    const double r1 = late_time_ratio(c, 10 / GS), r2 = late_time_ratio(c, 20 / GS),
                 r3 = late_time_ratio(c, 40 / GS);
    increasing = increasing && r1 < r2 && r2 < r3;
  }
  return {worst <= 1e-12 && increasing, worst, 1e-12,
          std::string("late-time ratio increasing ") + (increasing ? "yes" : "no")};
}

Outcome table_relations() {
  double worst = 0.0;
  bool eps_ok = true;
  for (int row = 1; row <= 4; ++row) {
    for (int tj = 0; tj <= 3; ++tj) {
      const int s = tj % 2 == 0 ? 1 : -1;
      const int eT = (row == 1 || row == 3) ? s : -s;
      const int eI = (row == 1 || row == 2) ? s : -s;
      const auto c = build_extension(row, tj);
      const auto rep = check_relations(c, spin_rep(tj), 1e-12);
      eps_ok = eps_ok && c.eps_T == eT && c.eps_I == eI && rep.eps_T_measured == eT &&
               rep.eps_I_measured == eI;
      for (const auto& ch : rep.checks) worst = std::max(worst, ch.deviation);
    }
  }
  return {worst <= 1e-12 && eps_ok, worst, 1e-12,
          std::string("epsilons match row formulas ") + (eps_ok ? "yes" : "no")};
}

Outcome reciprocity() {
  double worst = 0.0;
  bool identical = true, pass = true;
  for (const auto& cm : corpus_models()) {
    for (const auto& wp : corpus_wave_pairs()) {
      for (int i = 0; i < 20; ++i) {
        const double E = 0.05 + 2.95 * i / 19.0;
        const auto rep = reciprocity_check(cm.model, E, wp.probe, 1e-10);
        pass = pass && rep.pass;
        const auto& a = rep.sectors.at(0);
        const auto& b = rep.sectors.at(1);
        identical = identical && a.in_route == b.in_route && a.out_route == b.out_route &&
                    a.deviation == b.deviation;
        worst = std::max(worst, a.deviation / std::max(1.0, std::abs(a.out_route)));
      }
    }
  }
  return {pass && identical && worst <= 1e-10, worst, 1e-10,
          std::string("sectors identical ") + (identical ? "yes" : "no")};
}

struct LabeledWave {
  RationalFunction f;
  Space space;
};

std::vector<LabeledWave> tag_waves() {
  std::vector<LabeledWave> out;
  for (const auto& wp : corpus_wave_pairs()) {
    out.push_back({wp.state.f(), Space::phi_minus});
    out.push_back({wp.probe.g(), Space::phi_plus});
  }
  for (cplx a : {cplx(0, 2), cplx(1.5, 0.3), cplx(-0.5, 1)}) {
    out.push_back({StateWave::from_coefficients({1.0}, double_pole_denominator(a)).f(), Space::phi_minus});
    out.push_back({ObservableWave::from_coefficients({1.0}, double_pole_denominator(std::conj(a))).g(),
                   Space::phi_plus});
  }
  return out;
}

bool same_wave(const RationalFunction& a, const RationalFunction& b) {
  for (cplx w : {cplx(0.3, 0.1), cplx(1.7, -0.4), cplx(-2.0, 0.8)}) {
    if (std::abs(a(w) - b(w)) > 1e-14 * std::max(1.0, std::abs(b(w)))) return false;
  }
  return true;
}

bool reflected(const RationalFunction& out, const RationalFunction& in) {
  for (cplx w : {cplx(0.3, 0.1), cplx(1.7, -0.4), cplx(-2.0, 0.8)}) {
    const cplx expected = std::conj(in(std::conj(w)));
    if (std::abs(out(w) - expected) > 1e-14 * std::max(1.0, std::abs(expected))) return false;
  }
  return true;
}

Space flipped(Space s) {
  switch (s) {
    case Space::phi_minus:
      return Space::phi_plus;
    case Space::phi_plus:
      return Space::phi_minus;
    case Space::phi_minus_dual:
      return Space::phi_plus_dual;
    case Space::phi_plus_dual:
      return Space::phi_minus_dual;
  }
  return s;
}

Outcome tag_algebra() {
  int checked = 0, failed = 0;
  const auto waves = tag_waves();
  for (int two_j : {0, 1, 2, 3}) {
    const auto row4 = build_extension(4, two_j);
    const auto row1 = build_extension(1, two_j);
    for (const auto& lw : waves) {
      for (int tm = -two_j; tm <= two_j; tm += 2) {
        for (int r : {1, -1}) {
          TaggedKet k{lw.space, r, tm, std::polar(1.0, 0.1 * tm + 0.7), lw.f, std::nullopt};
          const auto once = transform_ket(row4, k);
          const auto twice = transform_ket(row4, once);
          const bool ok = once.space == flipped(lw.space) && once.r == -r && once.two_m == -tm &&
                          reflected(*once.wave, lw.f) && twice.space == lw.space && twice.r == r &&
                          twice.two_m == tm &&
                          std::abs(twice.phase - double(row4.eps_T) * k.phase) <= 1e-15 &&
                          same_wave(*twice.wave, lw.f);
          ++checked;
          if (!ok) ++failed;
        }
        TaggedKet k{lw.space, 0, tm, 1.0, lw.f, std::nullopt};
        const auto once = transform_ket(row1, k);
        const auto twice = transform_ket(row1, once);
        const bool ok = once.space == flipped(lw.space) && once.r == 0 && reflected(*once.wave, lw.f) &&
                        twice.space == lw.space &&
                        std::abs(twice.phase - double(row1.eps_T)) <= 1e-15;
        bool refused = false;
        try {
          TaggedKet bad = k;
          bad.r = 1;
          transform_ket(row1, bad);
        } catch (const ValidationError&) {
          refused = true;
        }
        ++checked;
        if (!ok || !refused) ++failed;
      }
    }
  }
  return {failed == 0, static_cast<double>(failed), 0.0,
          std::to_string(waves.size()) + " waves, " + std::to_string(checked) + " tag cases"};
}

int run_cli(const fs::path& dir, const std::string& config) {
  const std::string cmd = "cd \"" + dir.string() + "\" && \"" GAMOWLAB_CLI "\" --config \"" + config +
                          "\" > cli.log 2>&1";
  const int status = std::system(cmd.c_str());
  return status == 0 ? 0 : 1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "gamowlab_acceptance";
  fs::remove_all(root);
  std::vector<fs::path> configs;
  for (const auto& e : fs::directory_iterator(GAMOWLAB_CONFIG_DIR)) {
    if (e.path().extension() == ".json") configs.push_back(e.path());
  }
  std::sort(configs.begin(), configs.end());
  int failures = 0;
  for (const char* run : {"a", "b"}) {
    fs::create_directories(root / run);
    for (const auto& c : configs) failures += run_cli(root / run, c.string());
  }
  int compared = 0, differing = 0;
  for (const auto& e : fs::directory_iterator(root / "a")) {
    if (e.path().filename() == "cli.log") continue;
    ++compared;
    const fs::path other = root / "b" / e.path().filename();
    if (!fs::exists(other) || slurp(e.path()) != slurp(other)) ++differing;
  }
  const bool ok = failures == 0 && differing == 0 && compared >= static_cast<int>(configs.size());
  return {ok, static_cast<double>(differing), 0.0,
          std::to_string(compared) + " artifacts compared, " + std::to_string(failures) + " failed runs"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> fn;
  };
  const std::vector<Criterion> criteria = {
      {"jordan evolution exactness", jordan_exactness},
      {"semigroup law and domain", semigroup},
      {"exponential decay law", decay_law},
      {"hamiltonian action chain", hamiltonian_chain},
      {"expansion completeness and oracle", expansion_oracle},
      {"sub-exponential background", background_tail},
      {"two-level decomposition", kaon_decomposition},
      {"extension table relations", table_relations},
      {"reciprocity", reciprocity},
      {"tag algebra", tag_algebra},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s %2d %-36s value=%.3e tolerance=%.1e  %s\n", o.pass ? "PASS" : "FAIL", index, c.name,
                o.value, o.tolerance, o.note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
