#pragma once

#include <functional>
#include <vector>

#include "gamowlab/gamow_dynamics.hpp"
#include "gamowlab/hardy_waves.hpp"
#include "gamowlab/momentum_plane.hpp"
#include "gamowlab/smatrix_model.hpp"

namespace gamowlab {

inline constexpr double kDefaultDirectTmax = 200.0;

// beta for the order-k Jordan partner of pole `pole`; the pole's part of
// the amplitude is sum_k beta_k G_k(t), G_k(t) the evolved order-k pairing
// of the probe.
struct PoleTerm {
  int pole = 0;
  int order = 0;
  cplx coefficient;
};

struct ExpansionResult {
  ObservableWave probe;
  StateWave state;
  SMatrixModel model;
  DeformedPath path;

  std::vector<PoleTerm> pole_terms;
  // Energy Taylor coefficients of the reflected probe at each pole,
  // orders 0..N-1: the probe's Gamow functionals.
  std::vector<std::vector<cplx>> probe_functionals;

  cplx pairing;             // S-weighted pairing at t = 0 by real-axis quadrature
  cplx background_at_zero;
  double completeness_residual = 0.0;

  // 2w K(w) S(w) f(w), the undeformed integrand without the time factor.
  cplx integrand(cplx w) const;
  // Pole part of pole i at time t.
  cplx pole_part(int i, double t) const;
};

struct AmplitudeParts {
  double t = 0.0;
  cplx total;
  std::vector<cplx> poles;  // one entry per model pole
  cplx background;
};

struct AmplitudeSeries {
  std::vector<double> times;
  std::vector<cplx> values;
  std::vector<AmplitudeParts> parts;
};

// int_0^inf dE K(E) S(E) f(E), integrated in the energy variable.
cplx dirac_reconstruct(const ObservableWave& o, const StateWave& s,
                       const SMatrixModel& m = SMatrixModel{});

// int_0^inf dE e^{-iEt} K(E) S(E) f(E) on the real axis with oscillation
// aware panelling. Reference grade and slow.
cplx amplitude_direct(const ObservableWave& o, const StateWave& s, const SMatrixModel& m,
                      double t, double t_max = kDefaultDirectTmax);

// Pole terms by Laurent algebra, background on the rotated ray.
ExpansionResult complex_expand(const ObservableWave& o, const StateWave& s,
                               const SMatrixModel& m, const DeformedPath& path = {});

cplx background_amplitude(const ExpansionResult& r, double t);

AmplitudeParts amplitude_expanded(const ExpansionResult& r, double t);

double breit_wigner_profile(const ResonancePole& pole, double E);

// Worker threads for grid evaluation: GAMOWLAB_THREADS if set and valid,
// otherwise the hardware concurrency capped at 8.
int worker_count();

// Runs fn(i) for i in [0, n) on worker_count() threads; each index is
// evaluated exactly once and results must be written by index.
void parallel_for(int n, const std::function<void(int)>& fn);

AmplitudeSeries expanded_series(const ExpansionResult& r, const std::vector<double>& times);

}  // namespace gamowlab
