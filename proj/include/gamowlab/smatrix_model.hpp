#pragma once

#include <vector>

#include "gamowlab/momentum_plane.hpp"
#include "gamowlab/rational_function.hpp"

namespace gamowlab {

inline constexpr int kMaxPoleOrder = 4;
inline constexpr double kPoleSeparation = 1e-6;

// Resonance pole at w_R in the open fourth quadrant of the w-plane, so that
// z_R = w_R^2 lies on sheet II below the real energy axis.
struct ResonancePole {
  cplx w_R;
  int order = 1;

  ResonancePole(cplx w, int n = 1);

  cplx z_R() const { return w_R * w_R; }
  double E_R() const { return z_R().real(); }
  double gamma() const { return -2.0 * z_R().imag(); }
};

// S(w) = prod_i [(w - conj w_i)(w + w_i) / ((w - w_i)(w + conj w_i))]^{N_i}.
// Unimodular on the real axis, S(-w) S(w) = 1, S(0) = 1.
class SMatrixModel {
 public:
  SMatrixModel() = default;
  explicit SMatrixModel(std::vector<ResonancePole> poles);

  const std::vector<ResonancePole>& poles() const { return poles_; }
  bool empty() const { return poles_.empty(); }
  const RationalFunction& rational() const { return rational_; }
  // Smallest width over all poles; 0 for the empty model.
  double gamma_min() const;
  // Index of the pole at w (within the clustering tolerance), or -1.
  int find(cplx w) const;

 private:
  std::vector<ResonancePole> poles_;
  RationalFunction rational_ = RationalFunction::constant(1.0);
};

// Blaschke product evaluated factor by factor.
cplx s_value(const SMatrixModel& m, const MomentumPoint& p);

// delta(E) with S(sqrt E) = exp(2 i delta), continued from delta(0+) = 0.
double phase_shift(const SMatrixModel& m, double E);

// Coefficient a_{-n} of (E - z_R)^{-n} in the Laurent series of S(E) at z_R.
cplx laurent_at_pole(const SMatrixModel& m, const ResonancePole& pole, int n);

}  // namespace gamowlab
