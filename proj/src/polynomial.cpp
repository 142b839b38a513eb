#include "gamowlab/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace gamowlab {

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
  for (const auto& c : c_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw ValidationError("Polynomial: non-finite coefficient");
    }
  }
  trim();
}

Polynomial Polynomial::constant(cplx c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(cplx c, int power) {
  std::vector<cplx> v(power + 1, 0.0);
  v[power] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> c{1.0};
  for (const cplx r : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::linear_power(cplx r, int m) {
  return from_roots(std::vector<cplx>(m, r));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
}

cplx Polynomial::coeff(int k) const {
  return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : cplx(0.0);
}

cplx Polynomial::leading() const { return c_.empty() ? cplx(0.0) : c_.back(); }

cplx Polynomial::operator()(cplx w) const {
  cplx acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * w + *it;
  return acc;
}

double Polynomial::abs_scale(cplx w) const {
  const double r = std::abs(w);
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial();
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::conj_coeffs() const {
  std::vector<cplx> d(c_.size());
  std::transform(c_.begin(), c_.end(), d.begin(), [](cplx z) { return std::conj(z); });
  return Polynomial(std::move(d));
}

Polynomial Polynomial::deflate(cplx a) const {
  if (c_.size() <= 1) return Polynomial();
  std::vector<cplx> q(c_.size() - 1);
  cplx acc = c_.back();
  for (int k = static_cast<int>(c_.size()) - 2; k >= 0; --k) {
    q[k] = acc;
    acc = acc * a + c_[k];
  }
  return Polynomial(std::move(q));
}

std::vector<cplx> Polynomial::taylor_shift(cplx a) const {
  // Repeated synthetic division: the k-th remainder is b_k.
  std::vector<cplx> work = c_;
  std::vector<cplx> out(c_.size());
  const int n = static_cast<int>(c_.size());
  for (int k = 0; k < n; ++k) {
    for (int j = n - 2; j >= k; --j) work[j] += a * work[j + 1];
    out[k] = work[k];
  }
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<cplx> r(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
  for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * cplx(-1.0); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial();
  std::vector<cplx> r(c_.size() + o.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(cplx s) const {
  std::vector<cplx> r(c_);
  for (auto& c : r) c *= s;
  return Polynomial(std::move(r));
}

std::vector<cplx> polynomial_roots(const Polynomial& p) {
  const int n = p.degree();
  if (n <= 0) return {};
  const cplx lead = p.leading();
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeff(i) / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw RootFindingError("polynomial_roots: companion eigenvalue iteration failed");
  }
  const Polynomial dp = p.derivative();
  std::vector<cplx> roots(n);
  for (int i = 0; i < n; ++i) {
    cplx r = solver.eigenvalues()[i];
    double res = std::abs(p(r));
    for (int iter = 0; iter < 30 && res > 0.0; ++iter) {
      const cplx d = dp(r);
      if (d == cplx(0.0)) break;
      const cplx next = r - p(r) / d;
      const double next_res = std::abs(p(next));
      if (!(next_res < res)) break;
      r = next;
      res = next_res;
    }
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) {
      throw RootFindingError("polynomial_roots: non-finite root");
    }
    roots[i] = r;
  }
  return roots;
}

}  // namespace gamowlab
