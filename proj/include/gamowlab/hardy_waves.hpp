#pragma once

#include <vector>

#include "gamowlab/momentum_plane.hpp"
#include "gamowlab/quadrature.hpp"
#include "gamowlab/rational_function.hpp"

namespace gamowlab {

inline constexpr double kQuadrantClearance = 1e-9;
inline constexpr int kMaxFunctionalOrder = 8;

// Prepared-state surrogate in Phi_-: no pole of f in the closed fourth
// quadrant (clearance 1e-9), deg(den) >= deg(num) + 2.
class StateWave {
 public:
  StateWave() = default;
  explicit StateWave(RationalFunction f);
  static StateWave from_coefficients(const std::vector<cplx>& num, const std::vector<cplx>& den);

  const RationalFunction& f() const { return f_; }

 private:
  RationalFunction f_;
};

// Observable surrogate in Phi_+: no pole of g in the closed first quadrant
// (clearance 1e-9), deg(den) >= deg(num) + 2.
class ObservableWave {
 public:
  ObservableWave() = default;
  explicit ObservableWave(RationalFunction g);
  static ObservableWave from_coefficients(const std::vector<cplx>& num,
                                          const std::vector<cplx>& den);

  const RationalFunction& g() const { return g_; }

 private:
  RationalFunction g_;
};

// Distance from w to the closed first / fourth quadrant.
double distance_to_first_quadrant(cplx w);
double distance_to_fourth_quadrant(cplx w);

// K(w) = conj(g(conj w)); no pole in the closed fourth quadrant.
RationalFunction reflect(const ObservableWave& o);

struct PairingResult {
  cplx value;
  double error = 0.0;       // quadrature estimate, finite part plus mapped tail
  double tail_bound = 0.0;  // integral of |2w K f| beyond the cutoff
  double cutoff = 0.0;
};

// int_0^inf dE conj(g(E)) f(E) = int_0^inf 2w K(w) f(w) dw.
PairingResult pair_detailed(const ObservableWave& o, const StateWave& s,
                            const QuadratureOptions& opt = {});
cplx pair(const ObservableWave& o, const StateWave& s);

// (1/k!) (d/dE)^k h(w(E)) at E = z, continued along sheet z.sheet; the
// Gamow functional of order k on the continued wave.
cplx gamow_functional(const RationalFunction& h, const SheetedEnergy& z, int k);
// Orders 0..count-1 in one pass.
std::vector<cplx> gamow_functionals(const RationalFunction& h, const SheetedEnergy& z, int count);

// Requires z on sheet II and 0 <= k <= 8.
cplx gamow_functional(const StateWave& s, const SheetedEnergy& z, int k);

}  // namespace gamowlab
