#pragma once

#include <vector>

#include "gamowlab/errors.hpp"

namespace gamowlab {

// Dense complex polynomial, coefficients in ascending powers.
// The zero polynomial has an empty coefficient list and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);

  static Polynomial constant(cplx c);
  static Polynomial monomial(cplx c, int power);
  // prod (w - r_i)
  static Polynomial from_roots(const std::vector<cplx>& roots);
  // (w - r)^m
  static Polynomial linear_power(cplx r, int m);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx coeff(int k) const;
  cplx leading() const;

  cplx operator()(cplx w) const;
  // Sum |c_k| |w|^k, the scale against which a residual at w is judged.
  double abs_scale(cplx w) const;

  Polynomial derivative() const;
  Polynomial conj_coeffs() const;

  // Quotient by (w - a); the remainder equals p(a) and is discarded.
  Polynomial deflate(cplx a) const;
  // Coefficients b_k with p(w) = sum b_k (w - a)^k.
  std::vector<cplx> taylor_shift(cplx a) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(cplx s) const;

 private:
  void trim();
  std::vector<cplx> c_;
};

// Roots by companion-matrix eigenvalues followed by Newton polishing.
std::vector<cplx> polynomial_roots(const Polynomial& p);

}  // namespace gamowlab
