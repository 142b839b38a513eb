#include "gamowlab/momentum_plane.hpp"

#include <cmath>
#include <string>

#include "gamowlab/quadrature.hpp"

namespace gamowlab {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

MomentumPoint::MomentumPoint(cplx w_) : w(w_) {
  if (!finite(w)) throw ValidationError("MomentumPoint: non-finite momentum");
}

const char* to_string(Sheet s) {
  switch (s) {
    case Sheet::I:
      return "I";
    case Sheet::II:
      return "II";
    case Sheet::boundary:
      return "boundary";
  }
  return "?";
}

void DeformedPath::validate() const {
  if (!(angle > 0.0 && angle <= std::numbers::pi / 2)) {
    throw ValidationError("DeformedPath: angle must lie in (0, pi/2]");
  }
  if (!(s_max > 0.0) || !std::isfinite(s_max)) {
    throw ValidationError("DeformedPath: s_max must be positive");
  }
  if (node_count < kPathPanelOrder) {
    throw ValidationError("DeformedPath: node_count must be >= 16");
  }
}

SheetedEnergy energy_of(const MomentumPoint& p) {
  const cplx w = p.w;
  Sheet sheet = Sheet::boundary;
  if (w.imag() > 0.0) sheet = Sheet::I;
  if (w.imag() < 0.0) sheet = Sheet::II;
  return SheetedEnergy{w * w, sheet};
}

MomentumPoint momentum_of(const SheetedEnergy& e) {
  if (!finite(e.E)) throw ValidationError("momentum_of: non-finite energy");
  if (e.sheet == Sheet::boundary) {
    throw AmbiguityError("momentum_of: boundary sheet does not select a root");
  }
  if (e.E == cplx(0.0)) {
    throw AmbiguityError("momentum_of: E = 0 is the branch point");
  }
  cplx w = std::sqrt(e.E);  // principal root, Re w >= 0
  if (w.imag() == 0.0) {
    // E real positive: both roots sit on the boundary.
    throw AmbiguityError("momentum_of: E on the positive real axis has no root "
                         "in an open half plane");
  }
  const bool upper = w.imag() > 0.0;
  if ((e.sheet == Sheet::I) != upper) w = -w;
  return MomentumPoint(w);
}

std::vector<double> path_breakpoints(const DeformedPath& path) {
  path.validate();
  const int panels = path.node_count / kPathPanelOrder;
  std::vector<double> bp(panels + 1);
  for (int i = 0; i <= panels; ++i) bp[i] = path.s_max * i / panels;
  bp.back() = path.s_max;
  return bp;
}

std::vector<PathNode> sample_path(const DeformedPath& path) {
  const auto bp = path_breakpoints(path);
  const int panels = static_cast<int>(bp.size()) - 1;
  // Extra nodes beyond a multiple of the panel order are spread over the
  // first panels, so every panel has order >= kPathPanelOrder.
  const int extra = path.node_count - panels * kPathPanelOrder;
  const cplx dir = std::polar(1.0, -path.angle);
  std::vector<PathNode> out;
  out.reserve(path.node_count);
  for (int i = 0; i < panels; ++i) {
    const int order = kPathPanelOrder + extra / panels + (i < extra % panels ? 1 : 0);
    const GaussRule rule = gauss_legendre(order);
    const double a = bp[i];
    const double b = bp[i + 1];
    const double half = 0.5 * (b - a);
    for (int k = 0; k < order; ++k) {
      const double s = 0.5 * (a + b) + half * rule.nodes[k];
      out.push_back(PathNode{MomentumPoint(s * dir), rule.weights[k] * half * dir});
    }
  }
  return out;
}

}  // namespace gamowlab
