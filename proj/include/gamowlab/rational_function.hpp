#pragma once

#include <vector>

#include "gamowlab/polynomial.hpp"

namespace gamowlab {

struct Pole {
  cplx position;
  int multiplicity;
};

inline constexpr int kInputDegreeCap = 24;
inline constexpr int kDerivedDegreeCap = 160;
inline constexpr int kMaxDerivativeOrder = 12;
inline constexpr double kClusterTolerance = 1e-10;
inline constexpr double kPoleProximity = 1e-12;

// Rational function N(w) / D(w) of one complex variable. The denominator
// is held both as monic coefficients and as clustered roots with
// multiplicities; all calculus (derivatives, Laurent and Taylor
// coefficients) works from the clustered form, so it is exact up to
// floating-point rounding of the arithmetic itself.
class RationalFunction {
 public:
  // The zero function.
  RationalFunction();

  // Numerator / denominator coefficient lists (ascending powers). Both are
  // capped at degree 24; the denominator is normalized to be monic and
  // roots shared with the numerator are cancelled.
  static RationalFunction from_coefficients(const std::vector<cplx>& num,
                                            const std::vector<cplx>& den);
  // N(w) / prod (w - p_i)^{m_i} with known poles (no root finding).
  static RationalFunction from_poles(Polynomial num, std::vector<Pole> poles);
  static RationalFunction polynomial(Polynomial p);
  static RationalFunction constant(cplx c);

  const Polynomial& numerator() const { return num_; }
  Polynomial denominator() const;
  const std::vector<Pole>& poles() const { return poles_; }
  int numerator_degree() const { return num_.degree(); }
  int denominator_degree() const;
  bool is_zero() const { return num_.is_zero(); }

  // Throws PoleProximityError within 1e-12 of a pole.
  cplx operator()(cplx w) const;
  cplx evaluate(cplx w) const { return (*this)(w); }

  RationalFunction differentiate(int k = 1) const;

  // a_{-n}: coefficient of (w - p)^{-n} in the Laurent expansion at the
  // pole p. Requires p to be a pole of multiplicity >= n.
  cplx laurent_coefficient(cplx p, int n) const;

  // Coefficients c_0..c_{count-1} of the Taylor series at a regular point.
  std::vector<cplx> taylor_coefficients(cplx w0, int count) const;

  // Schwarz reflection w -> conj(f(conj(w))).
  RationalFunction reflect() const;

  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(cplx s) const;

  // Index of the pole within kClusterTolerance of p, or -1.
  int find_pole(cplx p) const;

 private:
  RationalFunction(Polynomial num, std::vector<Pole> poles, bool cancel);
  void cancel_common_roots();
  void check_degree(int cap) const;
  // Taylor coefficients at w0 of N(w) * prod_{i != skip} (w - p_i)^{-m_i}.
  std::vector<cplx> regular_part_series(cplx w0, int skip, int count) const;

  Polynomial num_;
  std::vector<Pole> poles_;
};

// Clustered roots of a polynomial with multiplicities.
std::vector<Pole> cluster_roots(const Polynomial& p);

RationalFunction poly_times(const Polynomial& p, const RationalFunction& f);

// Factor (w - root)^exponent; negative exponents are pole factors.
struct LinearFactor {
  cplx root;
  int exponent;
};

// Taylor coefficients at w0 of prod_i (w - root_i)^{exponent_i}.
std::vector<cplx> factor_series(const std::vector<LinearFactor>& factors, cplx w0, int count);

// Re-expands a Taylor series in (w - w0) as a series in (E - w0^2), E = w^2,
// along the branch w(E) through w0. Requires w0 != 0.
std::vector<cplx> to_energy_series(const std::vector<cplx>& wseries, cplx w0);

// (1/k!) (d/dE)^k f(w(E)) at E = w0^2, for k = 0..count-1.
std::vector<cplx> energy_taylor_coefficients(const RationalFunction& f, cplx w0, int count);

}  // namespace gamowlab
