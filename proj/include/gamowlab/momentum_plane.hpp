#pragma once

// Two-sheeted energy surface uniformized by the momentum w, E = w^2.
// Sheet I is the open upper half w-plane (physical sheet), sheet II the
// open lower half plane (where resonance poles live). The real w-axis is
// the boundary; the physical spectrum E >= 0 is its positive half.

#include <numbers>
#include <vector>

#include "gamowlab/errors.hpp"

namespace gamowlab {

struct MomentumPoint {
  cplx w;

  explicit MomentumPoint(cplx w_);
};

enum class Sheet { I, II, boundary };

const char* to_string(Sheet s);

struct SheetedEnergy {
  cplx E;
  Sheet sheet;
};

// Ray w = s * exp(-i*angle), s in [0, s_max], discretized by Gauss-Legendre
// panels. Angle is measured clockwise from the positive real w-axis.
struct DeformedPath {
  double angle = std::numbers::pi / 4;
  double s_max = 12.0;
  int node_count = 384;

  void validate() const;
};

struct PathNode {
  MomentumPoint point;
  cplx weight;
};

inline constexpr int kPathPanelOrder = 16;

SheetedEnergy energy_of(const MomentumPoint& p);

// Square root of E in the half plane selected by the sheet.
MomentumPoint momentum_of(const SheetedEnergy& e);

std::vector<PathNode> sample_path(const DeformedPath& path);

// Panel boundaries of sample_path in the real parameter s.
std::vector<double> path_breakpoints(const DeformedPath& path);

}  // namespace gamowlab
