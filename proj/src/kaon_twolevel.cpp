#include "gamowlab/kaon_twolevel.hpp"

#include <cmath>
#include <string>

namespace gamowlab {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_nonnegative(double t, const char* who) {
  if (!(t >= 0.0)) {
    throw SemigroupDomainError(std::string(who) + ": t = " + std::to_string(t) +
                               " is outside the forward semigroup t >= 0");
  }
}

cplx pole_term(cplx b, cplx F, const ResonancePole& p, double t) {
  return b * F * std::exp(-kI * p.z_R() * t);
}

}  // namespace

TwoLevelConfig TwoLevelConfig::from_waves(const SMatrixModel& model, const ObservableWave& probe,
                                          const StateWave& state, const DeformedPath& path) {
  const auto& poles = model.poles();
  if (poles.size() != 2) throw ValidationError("TwoLevelConfig: model must have exactly two poles");
  for (const auto& p : poles) {
    if (p.order != 1) throw ValidationError("TwoLevelConfig: both poles must be simple");
    if (!(p.E_R() > 0.0)) throw ValidationError("TwoLevelConfig: E_S and E_L must be > 0");
  }
  if (poles[0].gamma() == poles[1].gamma()) {
    throw ValidationError("TwoLevelConfig: Gamma_S must exceed Gamma_L");
  }
  TwoLevelConfig c;
  c.index_S_ = poles[0].gamma() > poles[1].gamma() ? 0 : 1;
  c.index_L_ = 1 - c.index_S_;
  c.expansion_ = complex_expand(probe, state, model, path);
  for (const auto& term : c.expansion_.pole_terms) {
    if (term.pole == c.index_S_) c.b_S_ = term.coefficient;
    if (term.pole == c.index_L_) c.b_L_ = term.coefficient;
  }
  return c;
}

TwoLevelConfig TwoLevelConfig::with_preparation(cplx b_S, cplx b_L) const {
  TwoLevelConfig c = *this;
  c.b_S_ = b_S;
  c.b_L_ = b_L;
  return c;
}

cplx effective_amplitude(const TwoLevelConfig& c, double t) {
  require_nonnegative(t, "effective_amplitude");
  return pole_term(c.b_L(), c.F_L(), c.pole_L(), t) + pole_term(c.b_S(), c.F_S(), c.pole_S(), t);
}

TwoLevelParts exact_amplitude(const TwoLevelConfig& c, double t) {
  require_nonnegative(t, "exact_amplitude");
  TwoLevelParts out;
  out.t = t;
  out.L = pole_term(c.b_L(), c.F_L(), c.pole_L(), t);
  out.S = pole_term(c.b_S(), c.F_S(), c.pole_S(), t);
  out.background = background_amplitude(c.expansion(), t);
  out.total = out.L + out.S + out.background;
  return out;
}

double regeneration_deficit(const TwoLevelConfig& c, double t) {
  const TwoLevelParts p = exact_amplitude(c, t);
  const double gap = std::abs(p.total - effective_amplitude(c, t));
  const double bg = std::abs(p.background);
  const double scale = std::max(std::abs(p.total), bg);
  if (std::abs(gap - bg) > 1e-12 * std::max(scale, 1e-300)) {
    throw ToleranceError("regeneration_deficit", "exact - effective differs from the background");
  }
  return bg;
}

double late_time_ratio(const TwoLevelConfig& c, double t) {
  const double g = c.pole_S().gamma();
  if (!(t >= 5.0 / g)) {
    throw ValidationError("late_time_ratio: t must be >= 5 / Gamma_S = " + std::to_string(5.0 / g));
  }
  const double s = std::abs(c.b_S() * c.F_S());
  if (s == 0.0) throw ValidationError("late_time_ratio: b_S F_S vanishes");
  return std::abs(background_amplitude(c.expansion(), t)) * std::exp(0.5 * g * t) / s;
}

}  // namespace gamowlab
