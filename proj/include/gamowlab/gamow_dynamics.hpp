#pragma once

#include <Eigen/Dense>

#include "gamowlab/hardy_waves.hpp"
#include "gamowlab/smatrix_model.hpp"

namespace gamowlab {

inline constexpr int kMaxJordanSize = 6;

enum class KetKind { decaying, growing };
enum class RTag { plus, minus };

const char* to_string(KetKind k);
const char* to_string(RTag r);

// Order-k Gamow ket of a resonance pole. Decaying kets carry eigenvalue z_R
// and evolve for t >= 0; growing kets carry conj(z_R) and evolve for t <= 0.
struct GamowKet {
  ResonancePole pole;
  int order = 0;
  KetKind kind = KetKind::decaying;
  RTag r = RTag::plus;

  GamowKet(ResonancePole p, int k = 0, KetKind kind = KetKind::decaying, RTag r = RTag::plus);

  cplx eigenvalue() const;
  // Point on sheet II where the ket's functionals are evaluated.
  SheetedEnergy energy() const { return {eigenvalue(), Sheet::II}; }
};

// Lower triangular Toeplitz: entry (k, k-l) = exp(-izt) (-it)^l / l!.
struct JordanEvolutionMatrix {
  int N = 1;
  cplx z;
  double t = 0.0;
  Eigen::MatrixXcd entries;
};

JordanEvolutionMatrix jordan_evolution_matrix(int N, cplx z, double t);

// e^{-izt} sum_{l<=k} (-it)^l / l! F_{k-l}, F_j the order-j functional of
// the reflected observable at z.
cplx evolve_gamow_pairing(const ObservableWave& o, const GamowKet& ket, double t);

// z F_k + F_{k-1}, F_{-1} = 0.
cplx hamiltonian_action(const ObservableWave& o, const GamowKet& ket);

// exp(-Gamma t).
double survival_probability(const ResonancePole& pole, double t);

// e^{-i conj(z) t} sum_{l<=k} (-it)^l / l! F_{k-l}[f] at conj(z), t <= 0.
cplx evolve_growing_pairing(const StateWave& s, const GamowKet& ket, double t);

}  // namespace gamowlab
