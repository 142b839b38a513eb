#include "gamowlab/smatrix_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gamowlab {

ResonancePole::ResonancePole(cplx w, int n) : w_R(w), order(n) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
    throw ValidationError("ResonancePole: non-finite position");
  }
  if (!(w.real() > 0.0 && w.imag() < 0.0)) {
    throw ValidationError("ResonancePole: w_R must lie in the open fourth quadrant");
  }
  if (n < 1 || n > kMaxPoleOrder) {
    throw ValidationError("ResonancePole: order must lie in [1, 4]");
  }
}

SMatrixModel::SMatrixModel(std::vector<ResonancePole> poles) : poles_(std::move(poles)) {
  for (std::size_t i = 0; i < poles_.size(); ++i) {
    for (std::size_t j = i + 1; j < poles_.size(); ++j) {
      if (std::abs(poles_[i].w_R - poles_[j].w_R) < kPoleSeparation) {
        throw ValidationError("SMatrixModel: pole positions must be separated by >= 1e-6");
      }
    }
  }
  std::vector<cplx> zeros;
  std::vector<Pole> ps;
  for (const auto& p : poles_) {
    for (int k = 0; k < p.order; ++k) {
      zeros.push_back(std::conj(p.w_R));
      zeros.push_back(-p.w_R);
    }
    ps.push_back({p.w_R, p.order});
    ps.push_back({-std::conj(p.w_R), p.order});
  }
  rational_ = RationalFunction::from_poles(Polynomial::from_roots(zeros), std::move(ps));
}

double SMatrixModel::gamma_min() const {
  double g = 0.0;
  for (const auto& p : poles_) g = (g == 0.0) ? p.gamma() : std::min(g, p.gamma());
  return g;
}

int SMatrixModel::find(cplx w) const {
  for (std::size_t i = 0; i < poles_.size(); ++i) {
    if (std::abs(poles_[i].w_R - w) <= kClusterTolerance * std::max(1.0, std::abs(w))) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

cplx s_value(const SMatrixModel& m, const MomentumPoint& p) {
  const cplx w = p.w;
  cplx s = 1.0;
  for (const auto& pole : m.poles()) {
    const cplx a = pole.w_R;
    const cplx den1 = w - a;
    const cplx den2 = w + std::conj(a);
    if (std::abs(den1) < kPoleProximity) throw PoleProximityError("s_value: at a pole", a);
    if (std::abs(den2) < kPoleProximity) {
      throw PoleProximityError("s_value: at a mirror pole", -std::conj(a));
    }
    const cplx factor = ((w - std::conj(a)) / den1) * ((w + a) / den2);
    for (int k = 0; k < pole.order; ++k) s *= factor;
  }
  return s;
}

double phase_shift(const SMatrixModel& m, double E) {
  if (!(E > 0.0) || !std::isfinite(E)) throw ValidationError("phase_shift: E must be > 0");
  if (m.empty()) return 0.0;
  // At least 32 samples per width of the narrowest resonance.
  const double h = m.gamma_min() / 32.0;
  const double steps_d = std::ceil(E / h);
  if (steps_d > 5e7) throw NumericalError("phase_shift: unwrap failure (too many samples)");
  const long steps = static_cast<long>(steps_d);
  double acc = 0.0;
  cplx prev = 1.0;  // S(0)
  for (long i = 1; i <= steps; ++i) {
    const double e = (i == steps) ? E : E * static_cast<double>(i) / static_cast<double>(steps);
    const cplx cur = s_value(m, MomentumPoint(std::sqrt(e)));
    const double d = std::arg(cur / prev);
    if (std::abs(d) >= std::numbers::pi / 4) {
      throw NumericalError("phase_shift: unwrap failure, phase step " + std::to_string(d) +
                           " rad exceeds pi/4");
    }
    acc += d;
    prev = cur;
  }
  // Snap to the branch of arg S(E) nearest the accumulated phase.
  const double a = std::arg(prev);
  const double two_pi = 2.0 * std::numbers::pi;
  const double total = a + two_pi * std::round((acc - a) / two_pi);
  return 0.5 * total;
}

cplx laurent_at_pole(const SMatrixModel& m, const ResonancePole& pole, int n) {
  const int idx = m.find(pole.w_R);
  if (idx < 0) throw ValidationError("laurent_at_pole: pole not in the model");
  const ResonancePole& p = m.poles()[idx];
  const int N = p.order;
  if (n < 1 || n > N) {
    throw ValidationError("laurent_at_pole: n = " + std::to_string(n) +
                          " exceeds the pole order " + std::to_string(N));
  }
  // R(w) = S(w) (E - z_R)^N = S(w) (w - w_R)^N (w + w_R)^N is regular at w_R;
  // a_{-n} is its energy Taylor coefficient of order N - n.
  std::vector<LinearFactor> factors;
  for (const auto& q : m.poles()) {
    factors.push_back({std::conj(q.w_R), q.order});
    factors.push_back({-q.w_R, q.order});
    factors.push_back({-std::conj(q.w_R), -q.order});
    if (&q != &p) factors.push_back({q.w_R, -q.order});
  }
  factors.push_back({-p.w_R, N});
  const auto wser = factor_series(factors, p.w_R, N - n + 1);
  return to_energy_series(wser, p.w_R)[N - n];
}

}  // namespace gamowlab
