#include "gamowlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

namespace gamowlab {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw ValidationError("gauss_legendre: n must be >= 1");
  // Returns {P_n(x), P_n'(x)}.
  auto legendre = [n](double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

namespace {

// QUADPACK qk21 abscissae and weights.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208863582695, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// 10-point Gauss weights at kXgk[1], kXgk[3], ..., kXgk[9].
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  cplx value;
  double error;
  double l1;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk21(const RealToComplex& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx kron = fc * kWgk[10];
  cplx gauss = 0.0;
  double l1 = std::abs(fc) * kWgk[10];
  for (int j = 0; j < 10; ++j) {
    const double dx = h * kXgk[j];
    const cplx f1 = f(c - dx);
    const cplx f2 = f(c + dx);
    kron += (f1 + f2) * kWgk[j];
    l1 += (std::abs(f1) + std::abs(f2)) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  Panel p{a, b, kron * h, std::abs((kron - gauss) * h), l1 * std::abs(h)};
  if (!std::isfinite(p.value.real()) || !std::isfinite(p.value.imag())) {
    throw QuadratureError("quadrature: non-finite integrand on [" +
                          std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  return p;
}

}  // namespace

QuadratureResult integrate_adaptive(const RealToComplex& f,
                                    std::span<const double> breakpoints,
                                    const QuadratureOptions& opt) {
  if (breakpoints.size() < 2) {
    throw ValidationError("quadrature: need at least two breakpoints");
  }
  std::priority_queue<Panel> heap;
  std::vector<Panel> settled;  // panels at the roundoff floor
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) {
      throw ValidationError("quadrature: breakpoints must be increasing");
    }
    heap.push(gk21(f, breakpoints[i], breakpoints[i + 1]));
  }

  auto totals = [&](cplx& value, double& err, double& l1) {
    value = 0.0;
    err = 0.0;
    l1 = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      value += copy.top().value;
      err += copy.top().error;
      l1 += copy.top().l1;
      copy.pop();
    }
    for (const auto& p : settled) {
      value += p.value;
      err += p.error;
      l1 += p.l1;
    }
  };

  cplx value;
  double err = 0.0;
  double l1 = 0.0;
  totals(value, err, l1);
  int count = static_cast<int>(heap.size());
  int since_resum = 0;
  while (!heap.empty()) {
    const double tol =
        std::max({opt.abs_tol, opt.rel_tol * std::abs(value), opt.l1_rel_tol * l1});
    if (err <= tol) break;
    if (count >= opt.max_intervals) {
      throw QuadratureError("quadrature: interval budget exhausted (error " +
                            std::to_string(err) + " > tolerance " +
                            std::to_string(tol) + ")");
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 1e-15 * std::max(1.0, std::abs(mid))) {
      settled.push_back(worst);
      continue;
    }
    Panel left = gk21(f, worst.a, mid);
    Panel right = gk21(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
    ++count;
    if (++since_resum == 2000) {
      totals(value, err, l1);
      since_resum = 0;
    }
  }
  totals(value, err, l1);
  return QuadratureResult{value, err, l1, count};
}

QuadratureResult integrate_adaptive(const RealToComplex& f, double a, double b,
                                    const QuadratureOptions& opt) {
  const std::array<double, 2> bp{a, b};
  return integrate_adaptive(f, std::span<const double>(bp), opt);
}

}  // namespace gamowlab
