#pragma once

#include "gamowlab/spectral_expansion.hpp"

namespace gamowlab {

// Two simple resonances, short-lived S and long-lived L, with the probe's
// Gamow functionals F_S, F_L and preparation coefficients b_S, b_L. By
// default b_i is the pole coefficient of the complex expansion of the
// prepared state, so the exact amplitude is the effective one plus the
// background.
class TwoLevelConfig {
 public:
  static TwoLevelConfig from_waves(const SMatrixModel& model, const ObservableWave& probe,
                                   const StateWave& state, const DeformedPath& path = {});

  TwoLevelConfig with_preparation(cplx b_S, cplx b_L) const;

  const ResonancePole& pole_S() const { return model().poles()[index_S_]; }
  const ResonancePole& pole_L() const { return model().poles()[index_L_]; }
  cplx b_S() const { return b_S_; }
  cplx b_L() const { return b_L_; }
  cplx F_S() const { return expansion_.probe_functionals[index_S_][0]; }
  cplx F_L() const { return expansion_.probe_functionals[index_L_][0]; }
  const SMatrixModel& model() const { return expansion_.model; }
  const ObservableWave& probe() const { return expansion_.probe; }
  const ExpansionResult& expansion() const { return expansion_; }

 private:
  TwoLevelConfig() = default;

  ExpansionResult expansion_;
  int index_S_ = 0;
  int index_L_ = 1;
  cplx b_S_;
  cplx b_L_;
};

struct TwoLevelParts {
  double t = 0.0;
  cplx total;
  cplx L;
  cplx S;
  cplx background;
};

cplx effective_amplitude(const TwoLevelConfig& c, double t);
TwoLevelParts exact_amplitude(const TwoLevelConfig& c, double t);
// |exact - effective|, equal to |background|.
double regeneration_deficit(const TwoLevelConfig& c, double t);
// |background(t)| / (|b_S F_S| e^{-Gamma_S t / 2}), t >= 5 / Gamma_S.
double late_time_ratio(const TwoLevelConfig& c, double t);

}  // namespace gamowlab
