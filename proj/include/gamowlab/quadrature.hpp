#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gamowlab/errors.hpp"

namespace gamowlab {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule by Newton iteration on P_n.
GaussRule gauss_legendre(int n);

struct QuadratureOptions {
  double rel_tol = 1e-11;
  double abs_tol = 0.0;
  // Absolute floor relative to the integral of |f|; limits the work spent
  // on integrals that cancel to far below the integrand scale.
  double l1_rel_tol = 1e-14;
  int max_intervals = 400000;
};

struct QuadratureResult {
  cplx value;
  double error = 0.0;
  double l1 = 0.0;  // estimate of the integral of |f|
  int intervals = 0;
};

using RealToComplex = std::function<cplx(double)>;

// Globally adaptive 21-point Gauss-Kronrod integration of a complex-valued
// function over [breakpoints.front(), breakpoints.back()]. The breakpoints
// form the initial partition; the interval with the largest error estimate
// is bisected until the total estimate meets the tolerance.
QuadratureResult integrate_adaptive(const RealToComplex& f,
                                    std::span<const double> breakpoints,
                                    const QuadratureOptions& opt = {});

QuadratureResult integrate_adaptive(const RealToComplex& f, double a, double b,
                                    const QuadratureOptions& opt = {});

}  // namespace gamowlab
