#include "gamowlab/spectral_expansion.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "gamowlab/quadrature.hpp"

namespace gamowlab {

namespace {

constexpr cplx kI{0.0, 1.0};

QuadratureOptions tight() {
  QuadratureOptions opt;
  opt.rel_tol = 1e-12;
  opt.l1_rel_tol = 1e-15;
  return opt;
}

double max_pole_modulus(const RationalFunction& f, const SMatrixModel& m) {
  double r = 1.0;
  for (const auto& p : f.poles()) r = std::max(r, std::abs(p.position));
  for (const auto& p : m.poles()) r = std::max(r, std::abs(p.w_R));
  return r;
}

void require_nonnegative(double t, const char* who) {
  if (!(t >= 0.0)) {
    throw SemigroupDomainError(std::string(who) + ": t = " + std::to_string(t) +
                               " is outside the forward semigroup t >= 0");
  }
}

// h(w) = K(w) S(w) f(w)
cplx weighted(const RationalFunction& K, const SMatrixModel& m, const RationalFunction& f,
              cplx w) {
  return K(w) * s_value(m, MomentumPoint(w)) * f(w);
}

std::vector<double> pole_abscissae(const RationalFunction& K, const RationalFunction& f,
                                   const SMatrixModel& m) {
  std::vector<double> x;
  for (const auto* fn : {&K, &f}) {
    for (const auto& p : fn->poles()) x.push_back(p.position.real());
  }
  for (const auto& p : m.poles()) x.push_back(p.w_R.real());
  return x;
}

void finish_breakpoints(std::vector<double>& bp) {
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end(),
                       [](double a, double b) { return std::abs(a - b) < 1e-12; }),
           bp.end());
}

}  // namespace

cplx ExpansionResult::integrand(cplx w) const {
  return 2.0 * w * weighted(reflect(probe), model, state.f(), w);
}

cplx ExpansionResult::pole_part(int i, double t) const {
  const ResonancePole& p = model.poles()[i];
  const auto& F = probe_functionals[i];
  const cplx phase = std::exp(-kI * p.z_R() * t);
  cplx acc = 0.0;
  for (const auto& term : pole_terms) {
    if (term.pole != i) continue;
    // G_k(t) = e^{-izt} sum_{l<=k} (-it)^l / l! F_{k-l}
    cplx g = 0.0;
    cplx c = 1.0;
    for (int l = 0; l <= term.order; ++l) {
      if (l > 0) c *= cplx(0.0, -t) / static_cast<double>(l);
      g += c * F[term.order - l];
    }
    acc += term.coefficient * g;
  }
  return phase * acc;
}

cplx dirac_reconstruct(const ObservableWave& o, const StateWave& s, const SMatrixModel& m) {
  if (o.g().is_zero() || s.f().is_zero()) return 0.0;
  const RationalFunction K = reflect(o);
  const double wc = 2.0 * max_pole_modulus(K, m) + 4.0;
  const double ec = wc * wc;
  auto h = [&](double E) { return weighted(K, m, s.f(), std::sqrt(E)); };
  std::vector<double> bp{0.0, ec};
  for (double x : pole_abscissae(K, s.f(), m)) {
    if (x > 0.0 && x * x < ec) bp.push_back(x * x);
  }
  finish_breakpoints(bp);
  const QuadratureOptions opt = tight();
  const cplx body = integrate_adaptive(h, bp, opt).value;
  // E = ec / u on [ec, inf)
  auto tail = [&](double u) { return h(ec / u) * (ec / (u * u)); };
  return body + integrate_adaptive(tail, 0.0, 1.0, opt).value;
}

cplx amplitude_direct(const ObservableWave& o, const StateWave& s, const SMatrixModel& m,
                      double t, double t_max) {
  require_nonnegative(t, "amplitude_direct");
  if (t > t_max) {
    throw ValidationError("amplitude_direct: t exceeds t_max_direct = " + std::to_string(t_max));
  }
  if (o.g().is_zero() || s.f().is_zero()) return 0.0;
  const RationalFunction K = reflect(o);
  const RationalFunction& f = s.f();
  const double wc = 2.0 * max_pole_modulus(K, m) + 4.0;

  auto real_axis = [&](double w) { return 2.0 * w * weighted(K, m, f, w) * std::exp(-kI * (w * w * t)); };
  std::vector<double> bp;
  const int uniform = static_cast<int>(std::ceil(wc / 0.05));
  for (int i = 0; i <= uniform; ++i) bp.push_back(wc * i / uniform);
  if (t > 0.0) {
    // Energy panels no wider than pi / (4t).
    const double de = std::numbers::pi / (4.0 * t);
    const long count = static_cast<long>(std::ceil(wc * wc / de));
    for (long k = 1; k < count; ++k) bp.push_back(std::sqrt(k * de));
  }
  for (double x : pole_abscissae(K, f, m)) {
    if (x > 0.0 && x < wc) bp.push_back(x);
  }
  finish_breakpoints(bp);
  QuadratureOptions opt = tight();
  opt.max_intervals = 2000000;
  const QuadratureResult body = integrate_adaptive(real_axis, bp, opt);

  // Tail from wc along wc + s e^{-i pi/4}, s = L u / (1 - u); no singularity
  // lies between this ray and the real axis beyond wc.
  const cplx dir = std::polar(1.0, -std::numbers::pi / 4);
  constexpr double L = 1.0;
  auto tail = [&](double u) {
    const double sv = L * u / (1.0 - u);
    const cplx w = wc + sv * dir;
    const double ds = L / ((1.0 - u) * (1.0 - u));
    return 2.0 * w * weighted(K, m, f, w) * std::exp(-kI * (w * w * t)) * dir * ds;
  };
  const QuadratureResult rest = integrate_adaptive(tail, 0.0, 1.0, opt);
  return body.value + rest.value;
}

ExpansionResult complex_expand(const ObservableWave& o, const StateWave& s,
                               const SMatrixModel& m, const DeformedPath& path) {
  path.validate();
  ExpansionResult r{o, s, m, path, {}, {}, 0.0, 0.0, 0.0};
  const RationalFunction K = reflect(o);
  const double theta = path.angle;
  for (std::size_t i = 0; i < m.poles().size(); ++i) {
    const ResonancePole& p = m.poles()[i];
    const double arg = std::arg(p.w_R);
    // Distance from the pole to the ray must not vanish.
    const double gap = std::abs(p.w_R) * std::sin(std::min(std::abs(arg + theta), std::numbers::pi / 2));
    if (!(arg > -theta) || gap < 1e-6 * std::abs(p.w_R)) {
      throw ValidationError("complex_expand: pole " + std::to_string(i) +
                            " lies on or outside the deformation sector");
    }
    const int N = p.order;
    std::vector<cplx> a(N + 1, 0.0);
    for (int n = 1; n <= N; ++n) a[n] = laurent_at_pole(m, p, n);
    const std::vector<cplx> Ff = s.f().is_zero() ? std::vector<cplx>(N, 0.0)
                                                 : energy_taylor_coefficients(s.f(), p.w_R, N);
    const std::vector<cplx> FK = K.is_zero() ? std::vector<cplx>(N, 0.0)
                                             : energy_taylor_coefficients(K, p.w_R, N);
    r.probe_functionals.push_back(FK);
    // Real-axis integral = ray integral - 2 pi i sum of residues in the
    // sector; beta_k = -2 pi i sum_j a_{-(k+j+1)} F_j[f].
    for (int k = 0; k < N; ++k) {
      cplx beta = 0.0;
      for (int j = 0; j + k + 1 <= N; ++j) beta += a[k + j + 1] * Ff[j];
      r.pole_terms.push_back({static_cast<int>(i), k, -2.0 * std::numbers::pi * kI * beta});
    }
  }
  r.pairing = dirac_reconstruct(o, s, m);
  r.background_at_zero = background_amplitude(r, 0.0);
  cplx sum = r.background_at_zero;
  for (std::size_t i = 0; i < m.poles().size(); ++i) sum += r.pole_part(static_cast<int>(i), 0.0);
  r.completeness_residual = std::abs(sum - r.pairing);
  return r;
}

cplx background_amplitude(const ExpansionResult& r, double t) {
  require_nonnegative(t, "background_amplitude");
  if (r.probe.g().is_zero() || r.state.f().is_zero()) return 0.0;
  const RationalFunction K = reflect(r.probe);
  const RationalFunction& f = r.state.f();
  const cplx dir = std::polar(1.0, -r.path.angle);
  auto ray = [&](double sv) {
    const cplx w = sv * dir;
    return 2.0 * w * weighted(K, r.model, f, w) * std::exp(-kI * (w * w * t)) * dir;
  };
  std::vector<double> bp = path_breakpoints(r.path);
  const double smax = r.path.s_max;
  if (t > 0.0) {
    for (int k = 1; k <= 16; ++k) {
      const double x = 0.25 * k / std::sqrt(t);
      if (x < smax) bp.push_back(x);
    }
  }
  // Closest approach of every singularity to the ray.
  auto add_projection = [&](cplx p) {
    const double x = (p * std::conj(dir)).real();
    if (x > 0.0 && x < smax) bp.push_back(x);
  };
  for (const auto* fn : {&K, &f}) {
    for (const auto& p : fn->poles()) add_projection(p.position);
  }
  for (const auto& p : r.model.poles()) add_projection(p.w_R);
  finish_breakpoints(bp);
  const QuadratureOptions opt = tight();
  const cplx body = integrate_adaptive(ray, bp, opt).value;
  auto tail = [&](double u) { return ray(smax / u) * (smax / (u * u)); };
  return body + integrate_adaptive(tail, 0.0, 1.0, opt).value;
}

AmplitudeParts amplitude_expanded(const ExpansionResult& r, double t) {
  require_nonnegative(t, "amplitude_expanded");
  AmplitudeParts out;
  out.t = t;
  out.background = background_amplitude(r, t);
  out.total = 0.0;
  for (std::size_t i = 0; i < r.model.poles().size(); ++i) {
    out.poles.push_back(r.pole_part(static_cast<int>(i), t));
    out.total += out.poles.back();
  }
  out.total += out.background;
  return out;
}

double breit_wigner_profile(const ResonancePole& pole, double E) {
  const double g = pole.gamma();
  const double d = E - pole.E_R();
  return (g / (2.0 * std::numbers::pi)) / (d * d + 0.25 * g * g);
}

int worker_count() {
  if (const char* env = std::getenv("GAMOWLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 256) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 8u));
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex guard;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(guard);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

AmplitudeSeries expanded_series(const ExpansionResult& r, const std::vector<double>& times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    require_nonnegative(times[i], "expanded_series");
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw ValidationError("expanded_series: times must be strictly increasing");
    }
  }
  AmplitudeSeries out;
  out.times = times;
  out.values.resize(times.size());
  out.parts.resize(times.size());
  parallel_for(static_cast<int>(times.size()), [&](int i) {
    out.parts[i] = amplitude_expanded(r, times[i]);
    out.values[i] = out.parts[i].total;
  });
  return out;
}

}  // namespace gamowlab
