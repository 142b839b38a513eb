#include "gamowlab/rational_function.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gamowlab {

namespace {

// Radius within which companion-matrix eigenvalues are treated as
// candidates for one multiple root (an m-fold root splits by ~eps^{1/m}).
constexpr double kCandidateRadius = 2e-4;
// Accepted residual spread of a refined multiple root.
constexpr double kMultiplicitySpread = 1e-7;
constexpr double kCommonRootResidual = 1e-10;
// Rounding allowance of a Taylor shift coefficient, in units of its scale.
constexpr double kShiftRounding = 64 * 2.220446049250313e-16;

// sum_i |p_i| C(i, k) |c|^{i-k}, the magnitude scale of the shifted b_k.
double shift_scale(const Polynomial& p, cplx c, int k) {
  const auto& a = p.coeffs();
  const double r = std::abs(c);
  double s = 0.0;
  for (int i = static_cast<int>(a.size()) - 1; i >= k; --i) {
    double binom = 1.0;
    for (int q = 0; q < k; ++q) binom = binom * (i - q) / (q + 1);
    s += std::abs(a[i]) * binom * std::pow(r, i - k);
  }
  return s;
}

bool same_point(cplx a, cplx b) {
  return std::abs(a - b) <= kClusterTolerance * std::max(1.0, std::abs(a));
}

std::vector<cplx> series_product(const std::vector<cplx>& a, const std::vector<cplx>& b,
                                 int count) {
  std::vector<cplx> out(count, 0.0);
  for (int i = 0; i < count && i < static_cast<int>(a.size()); ++i) {
    for (int j = 0; i + j < count && j < static_cast<int>(b.size()); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

std::string point_string(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
  return os.str();
}

}  // namespace

std::vector<Pole> cluster_roots(const Polynomial& p) {
  const std::vector<cplx> roots = polynomial_roots(p);
  const int n = static_cast<int>(roots.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double radius = kCandidateRadius * std::max(1.0, std::abs(roots[i]));
      if (std::abs(roots[i] - roots[j]) <= radius) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<cplx>> groups(n);
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(roots[i]);

  std::vector<Pole> out;
  for (const auto& g : groups) {
    const int m = static_cast<int>(g.size());
    if (m == 0) continue;
    if (m == 1) {
      out.push_back({g[0], 1});
      continue;
    }
    cplx c = std::accumulate(g.begin(), g.end(), cplx(0.0)) / static_cast<double>(m);
    Polynomial d_lo = p;
    for (int k = 0; k < m - 1; ++k) d_lo = d_lo.derivative();
    const Polynomial d_hi = d_lo.derivative();
    double res = std::abs(d_lo(c));
    for (int iter = 0; iter < 20 && res > 0.0; ++iter) {
      const cplx slope = d_hi(c);
      if (slope == cplx(0.0)) break;
      const cplx next = c - d_lo(c) / slope;
      const double next_res = std::abs(d_lo(next));
      if (!(next_res < res)) break;
      c = next;
      res = next_res;
    }
    const std::vector<cplx> b = p.taylor_shift(c);
    // b_k must be explained by a spread below kMultiplicitySpread or by the
    // rounding of the shift itself.
    const double delta = kMultiplicitySpread * std::max(1.0, std::abs(c));
    bool multiple = true;
    for (int k = 0; k < m && multiple; ++k) {
      multiple = std::abs(b[k]) <= std::pow(delta, m - k) * std::abs(b[m]) +
                                       kShiftRounding * shift_scale(p, c, k);
    }
    if (multiple) {
      out.push_back({c, m});
    } else {
      for (const cplx r : g) out.push_back({r, 1});
    }
  }
  // Final merge at the clustering tolerance.
  std::vector<Pole> merged;
  for (const auto& pl : out) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Pole& q) { return same_point(q.position, pl.position); });
    if (it != merged.end()) {
      it->multiplicity += pl.multiplicity;
    } else {
      merged.push_back(pl);
    }
  }
  std::sort(merged.begin(), merged.end(), [](const Pole& a, const Pole& b) {
    if (a.position.real() != b.position.real()) return a.position.real() < b.position.real();
    return a.position.imag() < b.position.imag();
  });
  return merged;
}

RationalFunction::RationalFunction() = default;

RationalFunction::RationalFunction(Polynomial num, std::vector<Pole> poles, bool cancel)
    : num_(std::move(num)), poles_(std::move(poles)) {
  for (const auto& pl : poles_) {
    if (pl.multiplicity < 1) throw ValidationError("RationalFunction: pole multiplicity < 1");
    if (!std::isfinite(pl.position.real()) || !std::isfinite(pl.position.imag())) {
      throw ValidationError("RationalFunction: non-finite pole");
    }
  }
  if (cancel) cancel_common_roots();
  if (num_.is_zero()) poles_.clear();
}

RationalFunction RationalFunction::from_coefficients(const std::vector<cplx>& num,
                                                     const std::vector<cplx>& den) {
  Polynomial n(num);
  const Polynomial d(den);
  if (d.is_zero()) throw ValidationError("RationalFunction: denominator is identically zero");
  if (n.degree() > kInputDegreeCap || d.degree() > kInputDegreeCap) {
    throw ValidationError("RationalFunction: degree exceeds the cap of 24");
  }
  n = n * (1.0 / d.leading());
  return RationalFunction(std::move(n), cluster_roots(d), true);
}

RationalFunction RationalFunction::from_poles(Polynomial num, std::vector<Pole> poles) {
  // Merge duplicates supplied by the caller.
  std::vector<Pole> merged;
  for (const auto& pl : poles) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Pole& q) { return same_point(q.position, pl.position); });
    if (it != merged.end()) {
      it->multiplicity += pl.multiplicity;
    } else {
      merged.push_back(pl);
    }
  }
  RationalFunction f(std::move(num), std::move(merged), true);
  f.check_degree(kDerivedDegreeCap);
  return f;
}

RationalFunction RationalFunction::polynomial(Polynomial p) {
  return RationalFunction(std::move(p), {}, false);
}

RationalFunction RationalFunction::constant(cplx c) {
  return polynomial(Polynomial::constant(c));
}

Polynomial RationalFunction::denominator() const {
  Polynomial d = Polynomial::constant(1.0);
  for (const auto& pl : poles_) d = d * Polynomial::linear_power(pl.position, pl.multiplicity);
  return d;
}

int RationalFunction::denominator_degree() const {
  int d = 0;
  for (const auto& pl : poles_) d += pl.multiplicity;
  return d;
}

void RationalFunction::check_degree(int cap) const {
  if (num_.degree() > cap || denominator_degree() > cap) {
    throw NumericalError("RationalFunction: derived degree exceeds internal cap");
  }
}

void RationalFunction::cancel_common_roots() {
  for (auto& pl : poles_) {
    while (pl.multiplicity > 0 && !num_.is_zero() &&
           std::abs(num_(pl.position)) <= kCommonRootResidual * num_.abs_scale(pl.position)) {
      num_ = num_.deflate(pl.position);
      --pl.multiplicity;
    }
  }
  std::erase_if(poles_, [](const Pole& p) { return p.multiplicity == 0; });
}

int RationalFunction::find_pole(cplx p) const {
  for (std::size_t i = 0; i < poles_.size(); ++i) {
    if (same_point(poles_[i].position, p)) return static_cast<int>(i);
  }
  return -1;
}

cplx RationalFunction::operator()(cplx w) const {
  cplx den = 1.0;
  for (const auto& pl : poles_) {
    const cplx d = w - pl.position;
    if (std::abs(d) < kPoleProximity) {
      throw PoleProximityError("evaluate: point " + point_string(w) +
                                   " is within 1e-12 of the pole " +
                                   point_string(pl.position),
                               pl.position);
    }
    for (int k = 0; k < pl.multiplicity; ++k) den *= d;
  }
  return num_(w) / den;
}

RationalFunction RationalFunction::differentiate(int k) const {
  if (k < 0 || k > kMaxDerivativeOrder) {
    throw ValidationError("differentiate: order must lie in [0, 12]");
  }
  RationalFunction f = *this;
  for (int step = 0; step < k; ++step) {
    if (f.num_.is_zero()) return f;
    if (f.poles_.empty()) {
      f = polynomial(f.num_.derivative());
      continue;
    }
    // d/dw [N / prod (w-r_i)^{m_i}]
    //   = [N' R - N sum_i m_i R / (w - r_i)] / (prod (w-r_i)^{m_i} * R),
    // with R = prod (w - r_i) the radical of the denominator.
    std::vector<cplx> radical_roots;
    for (const auto& pl : f.poles_) radical_roots.push_back(pl.position);
    const Polynomial radical = Polynomial::from_roots(radical_roots);
    Polynomial sum;
    for (std::size_t i = 0; i < radical_roots.size(); ++i) {
      std::vector<cplx> others;
      for (std::size_t j = 0; j < radical_roots.size(); ++j) {
        if (j != i) others.push_back(radical_roots[j]);
      }
      sum = sum + Polynomial::from_roots(others) * cplx(f.poles_[i].multiplicity);
    }
    Polynomial num = f.num_.derivative() * radical - f.num_ * sum;
    std::vector<Pole> poles = f.poles_;
    for (auto& pl : poles) ++pl.multiplicity;
    f = RationalFunction(std::move(num), std::move(poles), false);
    f.check_degree(kDerivedDegreeCap);
  }
  return f;
}

std::vector<cplx> RationalFunction::regular_part_series(cplx w0, int skip, int count) const {
  std::vector<cplx> series = num_.taylor_shift(w0);
  series.resize(std::max<std::size_t>(series.size(), count), 0.0);
  series.resize(count);
  for (int i = 0; i < static_cast<int>(poles_.size()); ++i) {
    if (i == skip) continue;
    const int m = poles_[i].multiplicity;
    const cplx d = w0 - poles_[i].position;
    // (d + x)^{-m} = sum_k d^{-m-k} (-1)^k C(m+k-1, k) x^k
    std::vector<cplx> factor(count);
    factor[0] = std::pow(d, -m);
    for (int k = 1; k < count; ++k) {
      factor[k] = factor[k - 1] * (-static_cast<double>(m + k - 1) / k) / d;
    }
    series = series_product(series, factor, count);
  }
  return series;
}

cplx RationalFunction::laurent_coefficient(cplx p, int n) const {
  const int idx = find_pole(p);
  if (idx < 0) {
    throw ValidationError("laurent_coefficient: " + point_string(p) + " is not a pole");
  }
  const int m = poles_[idx].multiplicity;
  if (n < 1 || n > m) {
    throw ValidationError("laurent_coefficient: order n = " + std::to_string(n) +
                          " exceeds the pole multiplicity " + std::to_string(m));
  }
  const auto series = regular_part_series(poles_[idx].position, idx, m - n + 1);
  return series[m - n];
}

std::vector<cplx> RationalFunction::taylor_coefficients(cplx w0, int count) const {
  for (const auto& pl : poles_) {
    if (std::abs(w0 - pl.position) < kPoleProximity) {
      throw PoleProximityError("taylor_coefficients: expansion point is a pole", pl.position);
    }
  }
  return regular_part_series(w0, -1, count);
}

RationalFunction RationalFunction::reflect() const {
  std::vector<Pole> poles = poles_;
  for (auto& pl : poles) pl.position = std::conj(pl.position);
  return RationalFunction(num_.conj_coeffs(), std::move(poles), false);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  std::vector<Pole> poles = poles_;
  for (const auto& pl : o.poles_) {
    auto it = std::find_if(poles.begin(), poles.end(),
                           [&](const Pole& q) { return same_point(q.position, pl.position); });
    if (it != poles.end()) {
      it->multiplicity += pl.multiplicity;
    } else {
      poles.push_back(pl);
    }
  }
  RationalFunction f(num_ * o.num_, std::move(poles), true);
  f.check_degree(kDerivedDegreeCap);
  return f;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  std::vector<Pole> poles = poles_;
  for (const auto& pl : o.poles_) {
    auto it = std::find_if(poles.begin(), poles.end(),
                           [&](const Pole& q) { return same_point(q.position, pl.position); });
    if (it != poles.end()) {
      it->multiplicity = std::max(it->multiplicity, pl.multiplicity);
    } else {
      poles.push_back(pl);
    }
  }
  auto lift = [&poles](const RationalFunction& f) {
    Polynomial n = f.num_;
    for (const auto& target : poles) {
      const int idx = f.find_pole(target.position);
      const int have = idx < 0 ? 0 : f.poles_[idx].multiplicity;
      n = n * Polynomial::linear_power(target.position, target.multiplicity - have);
    }
    return n;
  };
  Polynomial num = lift(*this) + lift(o);
  RationalFunction f(std::move(num), std::move(poles), true);
  f.check_degree(kDerivedDegreeCap);
  return f;
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return *this + o * cplx(-1.0);
}

RationalFunction RationalFunction::operator*(cplx s) const {
  return RationalFunction(num_ * s, poles_, false);
}

RationalFunction poly_times(const Polynomial& p, const RationalFunction& f) {
  return RationalFunction::polynomial(p) * f;
}

}  // namespace gamowlab

namespace gamowlab {

std::vector<cplx> factor_series(const std::vector<LinearFactor>& factors, cplx w0, int count) {
  std::vector<cplx> series(count, 0.0);
  series[0] = 1.0;
  for (const auto& fac : factors) {
    const cplx d = w0 - fac.root;
    if (std::abs(d) < kPoleProximity && fac.exponent < 0) {
      throw PoleProximityError("factor_series: expansion point is a pole", fac.root);
    }
    std::vector<cplx> term(count, 0.0);
    if (fac.exponent >= 0 && std::abs(d) < kPoleProximity) {
      if (fac.exponent < count) term[fac.exponent] = 1.0;
    } else {
      // (d + x)^e = sum_k binom(e, k) d^{e-k} x^k
      term[0] = std::pow(d, fac.exponent);
      for (int k = 1; k < count; ++k) {
        term[k] = term[k - 1] * (static_cast<double>(fac.exponent - k + 1) / k) / d;
      }
    }
    series = series_product(series, term, count);
  }
  return series;
}

std::vector<cplx> to_energy_series(const std::vector<cplx>& wseries, cplx w0) {
  const int count = static_cast<int>(wseries.size());
  if (count == 0) return {};
  if (std::abs(w0) < kPoleProximity) {
    throw PoleProximityError("to_energy_series: w = 0 is the branch point", 0.0);
  }
  const cplx z = w0 * w0;
  // w(E) - w0 = w0 [(1 + e/z)^{1/2} - 1] = sum_{i>=1} d_i e^i
  std::vector<cplx> u(count, 0.0);
  double binom = 1.0;
  cplx zpow = 1.0;
  for (int i = 1; i < count; ++i) {
    binom *= (0.5 - (i - 1)) / i;
    zpow *= z;
    u[i] = w0 * binom / zpow;
  }
  std::vector<cplx> out(count, 0.0);
  std::vector<cplx> upow(count, 0.0);
  upow[0] = 1.0;
  for (int j = 0; j < count; ++j) {
    for (int i = 0; i < count; ++i) out[i] += wseries[j] * upow[i];
    upow = series_product(upow, u, count);
  }
  return out;
}

std::vector<cplx> energy_taylor_coefficients(const RationalFunction& f, cplx w0, int count) {
  if (count < 1 || count > kMaxDerivativeOrder + 1) {
    throw ValidationError("energy_taylor_coefficients: order out of range");
  }
  return to_energy_series(f.taylor_coefficients(w0, count), w0);
}

}  // namespace gamowlab
