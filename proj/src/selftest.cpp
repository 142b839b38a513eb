#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "gamowlab/corpus.hpp"
#include "gamowlab/gamow_dynamics.hpp"
#include "gamowlab/kaon_twolevel.hpp"
#include "gamowlab/scenario.hpp"
#include "gamowlab/spectral_expansion.hpp"
#include "gamowlab/wigner_symmetry.hpp"

namespace gamowlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Deterministic points in [lo, hi): golden-ratio (Weyl) sequence.
double weyl(int i, double lo, double hi) {
  const double g = 0.6180339887498949;
  const double u = std::fmod(0.5 + g * (i + 1), 1.0);
  return lo + (hi - lo) * u;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

struct ExpandedCorpus {
  std::string name;
  SMatrixModel model;
  WavePair waves;
  ExpansionResult r;
};

std::vector<ExpandedCorpus> expand_corpus() {
  std::vector<ExpandedCorpus> out;
  for (const auto& m : corpus_models()) {
    for (const auto& w : corpus_wave_pairs()) {
      out.push_back({m.name + "/" + w.name, m.model, w, complex_expand(w.probe, w.state, m.model)});
    }
  }
  return out;
}

double fitted_exponent(const std::vector<double>& t, const std::vector<double>& y, int lo, int hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = hi - lo;
  for (int i = lo; i < hi; ++i) {
    const double x = std::log(t[i]);
    const double v = std::log(y[i]);
    sx += x;
    sy += v;
    sxx += x * x;
    sxy += x * v;
  }
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

std::vector<SelftestCheck> selftest(const std::map<std::string, double>& tol) {
  std::vector<SelftestCheck> out;
  auto record = [&](const std::string& name, double value, double tolerance) {
    out.push_back({name, value, tolerance, value <= tolerance});
  };
  auto T = [&](const std::string& name) { return tol.at(name); };
  const auto models = corpus_models();

  {
    double worst = 0.0;
    for (const auto& m : models) {
      for (int i = 0; i < 200; ++i) {
        const double w = 4.0 * (i + 0.5) / 200.0;
        worst = std::max(worst, std::abs(std::abs(s_value(m.model, MomentumPoint(w))) - 1.0));
      }
    }
    record("unimodularity", worst, T("unimodularity"));
  }
  {
    double worst = 0.0;
    for (const auto& m : models) {
      for (int i = 0; i < 200; ++i) {
        const cplx w(weyl(i, -3.0, 3.0), weyl(i + 1000, -3.0, 3.0));
        try {
          const cplx v = s_value(m.model, MomentumPoint(-w)) * s_value(m.model, MomentumPoint(w));
          worst = std::max(worst, std::abs(v - 1.0));
        } catch (const PoleProximityError&) {
        }
      }
    }
    record("mirror_symmetry", worst, T("mirror_symmetry"));
  }
  {
    double worst = 0.0;
    for (const auto& m : models) {
      const auto zeros = cluster_roots(m.model.rational().numerator());
      for (const auto& p : m.model.poles()) {
        for (const cplx target : {std::conj(p.w_R), -p.w_R}) {
          double best = kInf;
          for (const auto& z : zeros) {
            if (z.multiplicity == p.order) best = std::min(best, std::abs(z.position - target));
          }
          worst = std::max(worst, best);
        }
      }
    }
    record("pole_zero_pairing", worst, T("pole_zero_pairing"));
  }
  {
    double worst = 0.0;
    int idx = 0;
    for (int N = 1; N <= kMaxJordanSize; ++N) {
      for (int s = 0; s < 10; ++s, ++idx) {
        const cplx z(weyl(idx, 0.1, 5.0), -weyl(idx + 500, 0.01, 1.0));
        const double t = weyl(idx + 900, 0.0, 50.0);
        Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(N, N);
        for (int k = 0; k < N; ++k) J(k, k) = z;
        for (int k = 1; k < N; ++k) J(k, k - 1) = 1.0;
        const Eigen::MatrixXcd ref = (cplx(0.0, -t) * J).exp();
        const auto U = jordan_evolution_matrix(N, z, t).entries;
        const double scale = ref.cwiseAbs().maxCoeff();
        worst = std::max(worst, (U - ref).cwiseAbs().maxCoeff() / scale);
      }
    }
    record("jordan_exactness", worst, T("jordan_exactness"));
  }
  {
    double worst = 0.0;
    int domain_misses = 0;
    for (int i = 0; i < 50; ++i) {
      const double t1 = weyl(i, 0.0, 25.0);
      const double t2 = weyl(i + 77, 0.0, 25.0);
      const int N = 1 + i % kMaxJordanSize;
      const cplx z(weyl(i + 3, 0.1, 3.0), -weyl(i + 5, 0.01, 0.5));
      const auto a = jordan_evolution_matrix(N, z, t1).entries;
      const auto b = jordan_evolution_matrix(N, z, t2).entries;
      const auto c = jordan_evolution_matrix(N, z, t1 + t2).entries;
      for (int k = 0; k < N; ++k) {
        for (int l = 0; l <= k; ++l) worst = std::max(worst, rel((a * b)(k, l), c(k, l)));
      }
    }
    const auto& pair = corpus_wave_pair("broad");
    for (int i = 0; i < 20; ++i) {
      const double t = -weyl(i, 1e-6, 50.0);
      try {
        (void)evolve_gamow_pairing(pair.probe, GamowKet(ResonancePole(cplx(1.0, -0.05))), t);
        ++domain_misses;
      } catch (const SemigroupDomainError&) {
      }
    }
    record("semigroup", worst, T("semigroup"));
    record("semigroup_domain_misses", domain_misses, 0.0);
  }
  {
    double worst = 0.0;
    const auto& probe = corpus_wave_pair("broad").probe;
    for (const char* name : {"narrow", "wide"}) {
      const ResonancePole& p = corpus_model(name).model.poles()[0];
      const GamowKet ket(p);
      const cplx F0 = evolve_gamow_pairing(probe, ket, 0.0);
      for (int i = 0; i < 40; ++i) {
        const double t = (40.0 / p.gamma()) * i / 39.0;
        const double ratio = std::norm(evolve_gamow_pairing(probe, ket, t)) / std::norm(F0);
        worst = std::max(worst, std::abs(ratio - std::exp(-p.gamma() * t)) / std::exp(-p.gamma() * t));
      }
    }
    record("decay_law", worst, T("decay_law"));
  }
  {
    // z F_k + F_{k-1} against the order-k functional of E * K(w).
    double worst = 0.0;
    const auto& model = corpus_model("order2").model;
    const Polynomial E = Polynomial::monomial(1.0, 2);
    for (const auto& w : corpus_wave_pairs()) {
      const RationalFunction K = reflect(w.probe);
      const RationalFunction EK = poly_times(E, K);
      for (const auto& p : model.poles()) {
        const SheetedEnergy z{p.z_R(), Sheet::II};
        const auto F = gamow_functionals(K, z, 4);
        const auto G = gamow_functionals(EK, z, 4);
        double scale = 0.0;
        for (const cplx x : G) scale = std::max(scale, std::abs(x));
        for (int k = 0; k <= 3; ++k) {
          const cplx lhs = z.E * F[k] + (k > 0 ? F[k - 1] : cplx(0.0));
          worst = std::max(worst, std::abs(lhs - G[k]) / scale);
        }
        for (int k = 0; k < p.order; ++k) {
          const cplx h = hamiltonian_action(w.probe, GamowKet(p, k));
          worst = std::max(worst, std::abs(h - G[k]) / scale);
        }
      }
    }
    record("hamiltonian_chain", worst, T("hamiltonian_chain"));
  }

  const auto corpus = expand_corpus();
  {
    double worst = 0.0;
    for (const auto& c : corpus) worst = std::max(worst, c.r.completeness_residual / std::abs(c.r.pairing));
    record("completeness", worst, T("completeness"));
  }
  {
    const std::vector<double> times{0.0, 1.0, 5.0, 20.0};
    std::vector<double> errs(corpus.size() * times.size());
    parallel_for(static_cast<int>(errs.size()), [&](int i) {
      const auto& c = corpus[i / times.size()];
      const double t = times[i % times.size()];
      errs[i] = rel(amplitude_expanded(c.r, t).total,
                    amplitude_direct(c.waves.probe, c.waves.state, c.model, t));
    });
    record("oracle_equivalence", *std::max_element(errs.begin(), errs.end()), T("oracle_equivalence"));
  }
  {
    int violations = 0;
    double spread = 0.0;
    for (const auto& c : corpus) {
      const double g = c.model.gamma_min();
      std::vector<double> t, y;
      for (int i = 0; i < 20; ++i) {
        t.push_back((5.0 / g) * std::pow(10.0, i / 19.0));
        y.push_back(std::abs(background_amplitude(c.r, t.back())));
      }
      for (int i = 1; i < 20; ++i) {
        if (!(y[i] * std::exp(0.5 * g * t[i]) > y[i - 1] * std::exp(0.5 * g * t[i - 1]))) ++violations;
      }
      std::vector<double> tl, yl;
      for (int i = 0; i < 20; ++i) {
        tl.push_back((50.0 / g) * std::pow(10.0, i / 19.0));
        yl.push_back(std::abs(background_amplitude(c.r, tl.back())));
      }
      const double q1 = fitted_exponent(tl, yl, 0, 10);
      const double q2 = fitted_exponent(tl, yl, 10, 20);
      spread = std::max(spread, std::abs(q1 - q2) / (0.5 * std::abs(q1 + q2)));
    }
    record("background_monotone_violations", violations, 0.0);
    record("power_law_stability", spread, T("power_law_stability"));
  }
  {
    double worst = 0.0;
    DeformedPath narrow_sector;
    narrow_sector.angle = std::numbers::pi / 6;
    for (const auto& c : corpus) {
      const ExpansionResult alt = complex_expand(c.waves.probe, c.waves.state, c.model, narrow_sector);
      for (double t : {0.0, 1.0, 5.0}) {
        worst = std::max(worst, rel(background_amplitude(alt, t), background_amplitude(c.r, t)));
      }
    }
    record("deformation_independence", worst, T("deformation_independence"));
  }
  {
    double worst = 0.0;
    for (const auto& c : corpus) {
      for (std::size_t i = 0; i < c.model.poles().size(); ++i) {
        const auto& p = c.model.poles()[i];
        if (p.order != 1) continue;
        const cplx p0 = c.r.pole_part(static_cast<int>(i), 0.0);
        for (double t : {1.0, 10.0, 50.0}) {
          const double law = std::exp(-0.5 * p.gamma() * t);
          worst = std::max(worst, std::abs(std::abs(c.r.pole_part(static_cast<int>(i), t)) / std::abs(p0) - law) / law);
        }
      }
    }
    record("pole_term_purity", worst, T("pole_term_purity"));
  }
  {
    double worst = 0.0;
    int violations = 0;
    for (const auto& w : corpus_wave_pairs()) {
      const auto k = TwoLevelConfig::from_waves(corpus_model("kaon").model, w.probe, w.state);
      const double g = k.pole_S().gamma();
      for (double t : {0.0, 1.0, 10.0, 50.0}) {
        const auto p = exact_amplitude(k, t);
        worst = std::max(worst, rel(p.total, effective_amplitude(k, t) + p.background));
      }
      double prev = -1.0;
      for (double f : {10.0, 20.0, 40.0}) {
        const double r = late_time_ratio(k, f / g);
        if (!(r > prev)) ++violations;
        prev = r;
      }
    }
    record("kaon_decomposition", worst, T("kaon_decomposition"));
    record("late_time_ratio_violations", violations, 0.0);
  }
  {
    double worst = 0.0;
    for (int row = 1; row <= 4; ++row) {
      for (int two_j = 0; two_j <= 3; ++two_j) {
        const auto rep = check_relations(build_extension(row, two_j), spin_rep(two_j));
        if (rep.eps_T_measured != rep.eps_T || rep.eps_I_measured != rep.eps_I) worst = kInf;
        for (const auto& ch : rep.checks) worst = std::max(worst, ch.deviation);
      }
    }
    record("extension_relations", worst, T("extension_relations"));
  }
  {
    double worst = 0.0;
    for (const auto& m : models) {
      for (int i = 0; i < 20; ++i) {
        const double E = 0.1 + 2.9 * i / 19.0;
        const auto rep = reciprocity_check(m.model, E);
        for (const auto& s : rep.sectors) worst = std::max(worst, s.deviation);
        if (rep.sectors[0].in_route != rep.sectors[1].in_route ||
            rep.sectors[0].out_route != rep.sectors[1].out_route) {
          worst = kInf;
        }
      }
    }
    record("reciprocity", worst, T("reciprocity"));
  }
  {
    int violations = 0;
    for (int two_j = 0; two_j <= 3; ++two_j) {
      for (int row : {1, 4}) {
        const auto c = build_extension(row, two_j);
        for (const auto& w : corpus_wave_pairs()) {
          const TaggedKet k{Space::phi_minus, row == 1 ? 0 : 1, two_j, 1.0, w.state.f(), {}};
          const TaggedKet once = transform_ket(c, k);
          const TaggedKet twice = transform_ket(c, once);
          if (once.space != Space::phi_plus || once.r != -k.r) ++violations;
          if (twice.space != k.space || twice.r != k.r || twice.two_m != k.two_m) ++violations;
          if (std::abs(twice.phase - double(c.eps_T) * k.phase) > 1e-15) ++violations;
        }
      }
    }
    record("tag_algebra_violations", violations, 0.0);
  }
  return out;
}

}  // namespace gamowlab
