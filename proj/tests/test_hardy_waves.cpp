#include <doctest.h>

#include "gamowlab/corpus.hpp"
#include "gamowlab/hardy_waves.hpp"
#include "oracles.hpp"

using namespace gamowlab;

namespace {

StateWave state_at(cplx a) { return StateWave::from_coefficients({1.0}, double_pole_denominator(a)); }
ObservableWave obs_at(cplx a) {
  return ObservableWave::from_coefficients({1.0}, double_pole_denominator(a));
}

}  // namespace

TEST_CASE("wave invariants") {
  CHECK_NOTHROW(state_at(cplx(0, 2)));
  CHECK_NOTHROW(state_at(cplx(1, 0.1)));
  CHECK_THROWS_AS(state_at(cplx(1, -0.1)), ValidationError);
  CHECK_THROWS_AS(state_at(cplx(1, 0)), ValidationError);
  CHECK_THROWS_AS(state_at(cplx(0, -1)), ValidationError);
  CHECK_NOTHROW(obs_at(cplx(1, -0.1)));
  CHECK_THROWS_AS(obs_at(cplx(1, 0.1)), ValidationError);
  CHECK_THROWS_AS(obs_at(cplx(0, 1)), ValidationError);
  // Degree gap of one is not square integrable.
  CHECK_THROWS_AS(StateWave::from_coefficients({1.0}, {cplx(0, -2), 1.0}), ValidationError);
  CHECK_THROWS_AS(ObservableWave::from_coefficients({0.0, 1.0}, double_pole_denominator(cplx(-1, -1))),
                  ValidationError);
  CHECK_NOTHROW(StateWave());
}

TEST_CASE("quadrant distances") {
  CHECK(distance_to_first_quadrant(cplx(1, 1)) == 0.0);
  CHECK(distance_to_first_quadrant(cplx(-3, 4)) == doctest::Approx(3.0));
  CHECK(distance_to_first_quadrant(cplx(-3, -4)) == doctest::Approx(5.0));
  CHECK(distance_to_fourth_quadrant(cplx(1, -1)) == 0.0);
  CHECK(distance_to_fourth_quadrant(cplx(2, 0.5)) == doctest::Approx(0.5));
  CHECK(distance_to_fourth_quadrant(cplx(-3, 4)) == doctest::Approx(5.0));
}

TEST_CASE("reflect conjugates the observable") {
  auto o = ObservableWave::from_coefficients({1.0}, double_pole_denominator(cplx(-1, -2)));
  auto K = reflect(o);
  const cplx w(0.3, -0.4);
  CHECK(oracle::rel(K(w), 1.0 / std::pow(w + cplx(1, -2), 2)) < 1e-14);
  auto real = ObservableWave::from_coefficients({1.0}, {4.0, 4.0, 1.0});
  CHECK(oracle::rel(reflect(real)(w), real.g()(w)) < 1e-15);
  CHECK(oracle::rel(reflect(ObservableWave(K.reflect()))(w), K(w)) < 1e-15);
}

TEST_CASE("pair matches the residue closure value") {
  // K = f = 1/(w - 2i)^2: int_0^inf 2w (w - 2i)^{-4} dw = 1 / (3 (2i)^2) = -1/12.
  auto s = state_at(cplx(0, 2));
  auto o = obs_at(cplx(0, -2));
  auto r = pair_detailed(o, s);
  CHECK(std::abs(r.value - cplx(-1.0 / 12.0)) < 1e-12);
  CHECK(r.error < 1e-10);
  CHECK(r.cutoff > 0.0);
}

TEST_CASE("pair of a zero state vanishes") {
  CHECK(pair(obs_at(cplx(-1, -2)), StateWave()) == cplx(0.0));
  CHECK(pair(ObservableWave(), state_at(cplx(0, 1))) == cplx(0.0));
}

TEST_CASE("pair is invariant under role swap with reflection") {
  // Observable reflect(f) and state reflect(g) conjugate both boundary values,
  // so the integrand conj(g) f is unchanged.
  for (const auto& wp : corpus_wave_pairs()) {
    ObservableWave o2(wp.state.f().reflect());
    StateWave s2(wp.probe.g().reflect());
    CHECK(oracle::rel(pair(o2, s2), pair(wp.probe, wp.state)) < 1e-12);
  }
}

TEST_CASE("pair is linear in the state") {
  const auto& o = corpus_wave_pair("broad").probe;
  auto s1 = state_at(cplx(0.5, 1.0));
  auto s2 = state_at(cplx(-1.0, 0.3));
  const cplx c1(0.7, -0.2), c2(-1.1, 0.4);
  StateWave combo(s1.f() * c1 + s2.f() * c2);
  CHECK(oracle::rel(pair(o, combo), c1 * pair(o, s1) + c2 * pair(o, s2)) < 1e-10);
}

TEST_CASE("gamow_functional order zero is direct evaluation") {
  auto s = StateWave::from_coefficients({1.0}, Polynomial::from_roots({cplx(0, 2), cplx(0, 3)}).coeffs());
  const cplx wR(1.0, -0.05);
  const SheetedEnergy z{wR * wR, Sheet::II};
  const cplx expected = 1.0 / ((wR - cplx(0, 2)) * (wR - cplx(0, 3)));
  CHECK(oracle::rel(gamow_functional(s, z, 0), expected) < 1e-14);
  // Single factor: f = 1/(w - 2i) gives 1/(1 - 2.05i) at w = 1 - 0.05i.
  auto f = RationalFunction::from_coefficients({1.0}, {cplx(0, -2), 1.0});
  CHECK(oracle::rel(gamow_functional(f, z, 0), 1.0 / cplx(1, -2.05)) < 1e-14);
}

TEST_CASE("gamow_functional order one is the energy derivative") {
  const auto& s = corpus_wave_pair("broad").state;
  const cplx wR(1.0, -0.05);
  const SheetedEnergy z{wR * wR, Sheet::II};
  auto fE = [&](cplx E) { return s.f()(oracle::sqrt_near(E, wR)); };
  const double h = 1e-5;
  const cplx fd = (fE(z.E + h) - fE(z.E - h)) / (2 * h);
  CHECK(oracle::rel(gamow_functional(s, z, 1), fd) < 1e-6);
  const cplx fd2 = 0.5 * oracle::d2(fE, z.E, 1e-3);
  CHECK(oracle::rel(gamow_functional(s, z, 2), fd2) < 1e-7);
}

TEST_CASE("gamow_functional depends on the sheet") {
  const auto& s = corpus_wave_pair("broad").state;
  const cplx E(0.9975, -0.1);
  const cplx a = gamow_functional(s.f(), {E, Sheet::II}, 0);
  const cplx b = gamow_functional(s.f(), {E, Sheet::I}, 0);
  CHECK(std::abs(a - b) > 1e-3);
  CHECK_THROWS_AS(gamow_functional(s, {E, Sheet::I}, 0), ValidationError);
  CHECK_THROWS_AS(gamow_functional(s, {E, Sheet::II}, 9), ValidationError);
}
