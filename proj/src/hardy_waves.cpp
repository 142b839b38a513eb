#include "gamowlab/hardy_waves.hpp"

#include <algorithm>
#include <cmath>

namespace gamowlab {

namespace {

void check_degree_gap(const RationalFunction& f, const char* who) {
  if (f.is_zero()) return;
  if (f.denominator_degree() < f.numerator_degree() + 2) {
    throw ValidationError(std::string(who) + ": deg(den) must be >= deg(num) + 2");
  }
}

double max_pole_modulus(const RationalFunction& f) {
  double r = 0.0;
  for (const auto& p : f.poles()) r = std::max(r, std::abs(p.position));
  return r;
}

}  // namespace

double distance_to_first_quadrant(cplx w) {
  return std::hypot(std::max(0.0, -w.real()), std::max(0.0, -w.imag()));
}

double distance_to_fourth_quadrant(cplx w) {
  return std::hypot(std::max(0.0, -w.real()), std::max(0.0, w.imag()));
}

StateWave::StateWave(RationalFunction f) : f_(std::move(f)) {
  for (const auto& p : f_.poles()) {
    if (distance_to_fourth_quadrant(p.position) < kQuadrantClearance) {
      throw ValidationError("StateWave: pole in the closed fourth quadrant");
    }
  }
  check_degree_gap(f_, "StateWave");
}

StateWave StateWave::from_coefficients(const std::vector<cplx>& num,
                                       const std::vector<cplx>& den) {
  return StateWave(RationalFunction::from_coefficients(num, den));
}

ObservableWave::ObservableWave(RationalFunction g) : g_(std::move(g)) {
  for (const auto& p : g_.poles()) {
    if (distance_to_first_quadrant(p.position) < kQuadrantClearance) {
      throw ValidationError("ObservableWave: pole in the closed first quadrant");
    }
  }
  check_degree_gap(g_, "ObservableWave");
}

ObservableWave ObservableWave::from_coefficients(const std::vector<cplx>& num,
                                                 const std::vector<cplx>& den) {
  return ObservableWave(RationalFunction::from_coefficients(num, den));
}

RationalFunction reflect(const ObservableWave& o) { return o.g().reflect(); }

PairingResult pair_detailed(const ObservableWave& o, const StateWave& s,
                            const QuadratureOptions& opt) {
  PairingResult out;
  if (o.g().is_zero() || s.f().is_zero()) return out;
  const RationalFunction K = reflect(o);
  check_degree_gap(K, "pair");
  check_degree_gap(s.f(), "pair");
  const double cut = 2.0 * std::max({1.0, max_pole_modulus(K), max_pole_modulus(s.f())}) + 4.0;
  out.cutoff = cut;
  auto h = [&](double w) { return 2.0 * w * K(w) * s.f()(w); };

  std::vector<double> bp{0.0, cut};
  for (const auto* fn : {&K, &s.f()}) {
    for (const auto& p : fn->poles()) {
      const double x = p.position.real();
      if (x > 0.0 && x < cut) bp.push_back(x);
    }
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  const QuadratureResult body = integrate_adaptive(h, bp, opt);

  // w = cut / u maps [cut, inf) onto (0, 1].
  auto tail = [&](double u) { return h(cut / u) * (cut / (u * u)); };
  const QuadratureResult rest = integrate_adaptive(tail, 0.0, 1.0, opt);

  out.value = body.value + rest.value;
  out.error = body.error + rest.error;
  out.tail_bound = rest.l1;
  return out;
}

cplx pair(const ObservableWave& o, const StateWave& s) { return pair_detailed(o, s).value; }

std::vector<cplx> gamow_functionals(const RationalFunction& h, const SheetedEnergy& z, int count) {
  if (count < 1 || count > kMaxFunctionalOrder + 1) {
    throw ValidationError("gamow_functional: order k must lie in [0, 8]");
  }
  const MomentumPoint w = momentum_of(z);
  if (h.is_zero()) return std::vector<cplx>(count, 0.0);
  return energy_taylor_coefficients(h, w.w, count);
}

cplx gamow_functional(const RationalFunction& h, const SheetedEnergy& z, int k) {
  if (k < 0) throw ValidationError("gamow_functional: order k must lie in [0, 8]");
  return gamow_functionals(h, z, k + 1)[k];
}

cplx gamow_functional(const StateWave& s, const SheetedEnergy& z, int k) {
  if (z.sheet != Sheet::II) throw ValidationError("gamow_functional: z must lie on sheet II");
  return gamow_functional(s.f(), z, k);
}

}  // namespace gamowlab
