#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "capcover/angle_intervals.hpp"
#include "capcover/geometry.hpp"

namespace capcover {

using CapConfiguration = std::vector<Cap>;

// Exposed arcs shorter than this are treated as numerical slivers.
inline constexpr double kSliverLength = 1e-9;

struct ExposedPoint {
  std::size_t cap_index = 0;
  double t = 0.0;
};

struct CoverageVerdict {
  bool covered = false;
  std::optional<UnitVector> witness;
  // Midpoints of every exposed arc, in cap order.
  std::vector<ExposedPoint> exposed;
  // Set when dropping sub-sliver exposed arcs changed the verdict to covered.
  bool marginal = false;
};

// Part of cap i's boundary circle not inside any other cap, before sliver
// filtering.
AngleIntervalSet exposed_arcs(const CapConfiguration& config, std::size_t i);

// Exact emptiness decision for the uncovered set. Throws
// WitnessConstructionError if an arc is exposed but no uncovered point can be
// verified near it.
CoverageVerdict is_covered(const CapConfiguration& config);

std::optional<UnitVector> find_uncovered_witness(const CapConfiguration& config);

// True iff no cap in the configuration contains x.
bool is_uncovered(const CapConfiguration& config, const UnitVector& x);

}  // namespace capcover
