#include "gamowlab/gamow_dynamics.hpp"

#include <cmath>
#include <string>

namespace gamowlab {

namespace {

void require_nonnegative(double t, const char* who) {
  if (!(t >= 0.0)) {
    throw SemigroupDomainError(std::string(who) + ": t = " + std::to_string(t) +
                               " is outside the forward semigroup t >= 0");
  }
}

// e^{-izt} sum_{l<=k} (-it)^l / l! F_{k-l}
cplx jordan_combination(const std::vector<cplx>& F, int k, cplx z, double t) {
  cplx acc = 0.0;
  cplx c = 1.0;
  for (int l = 0; l <= k; ++l) {
    if (l > 0) c *= cplx(0.0, -t) / static_cast<double>(l);
    acc += c * F[k - l];
  }
  return std::exp(cplx(0.0, -1.0) * z * t) * acc;
}

}  // namespace

const char* to_string(KetKind k) { return k == KetKind::decaying ? "decaying" : "growing"; }
const char* to_string(RTag r) { return r == RTag::plus ? "+" : "-"; }

GamowKet::GamowKet(ResonancePole p, int k, KetKind kind_, RTag r_)
    : pole(p), order(k), kind(kind_), r(r_) {
  if (k < 0 || k >= p.order) {
    throw ValidationError("GamowKet: order k must satisfy 0 <= k < N");
  }
}

cplx GamowKet::eigenvalue() const {
  return kind == KetKind::decaying ? pole.z_R() : std::conj(pole.z_R());
}

JordanEvolutionMatrix jordan_evolution_matrix(int N, cplx z, double t) {
  if (N < 1 || N > kMaxJordanSize) {
    throw ValidationError("jordan_evolution_matrix: N must lie in [1, 6]");
  }
  require_nonnegative(t, "jordan_evolution_matrix");
  JordanEvolutionMatrix m{N, z, t, Eigen::MatrixXcd::Zero(N, N)};
  const cplx diag = std::exp(cplx(0.0, -1.0) * z * t);
  cplx c = diag;
  for (int l = 0; l < N; ++l) {
    if (l > 0) c *= cplx(0.0, -t) / static_cast<double>(l);
    for (int k = l; k < N; ++k) m.entries(k, k - l) = c;
  }
  return m;
}

cplx evolve_gamow_pairing(const ObservableWave& o, const GamowKet& ket, double t) {
  if (ket.kind != KetKind::decaying) {
    throw ValidationError("evolve_gamow_pairing: requires a decaying ket");
  }
  require_nonnegative(t, "evolve_gamow_pairing");
  const auto F = gamow_functionals(reflect(o), ket.energy(), ket.order + 1);
  return jordan_combination(F, ket.order, ket.eigenvalue(), t);
}

cplx hamiltonian_action(const ObservableWave& o, const GamowKet& ket) {
  const auto F = gamow_functionals(reflect(o), ket.energy(), ket.order + 1);
  const cplx lower = ket.order > 0 ? F[ket.order - 1] : cplx(0.0);
  return ket.eigenvalue() * F[ket.order] + lower;
}

double survival_probability(const ResonancePole& pole, double t) {
  require_nonnegative(t, "survival_probability");
  return std::exp(-pole.gamma() * t);
}

cplx evolve_growing_pairing(const StateWave& s, const GamowKet& ket, double t) {
  if (ket.kind != KetKind::growing) {
    throw ValidationError("evolve_growing_pairing: requires a growing ket");
  }
  if (!(t <= 0.0)) {
    throw SemigroupDomainError("evolve_growing_pairing: t = " + std::to_string(t) +
                               " is outside the backward semigroup t <= 0");
  }
  const auto F = gamow_functionals(s.f(), ket.energy(), ket.order + 1);
  return jordan_combination(F, ket.order, ket.eigenvalue(), t);
}

}  // namespace gamowlab
