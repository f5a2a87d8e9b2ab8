#include "capcover/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "capcover/errors.hpp"

namespace capcover {
namespace {

constexpr double kPushStart = 1e-6;
constexpr double kPushLimit = 1e-2;

bool caps_disjoint(const Cap& a, const Cap& b) {
  const double sum = a.radius() + b.radius();
  return sum < kPi && dot(a.center(), b.center()) < std::cos(sum) - 1e-12;
}

// Deterministic spread of `count` points (Fibonacci lattice).
UnitVector lattice_point(std::size_t k, std::size_t count) {
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(count);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = golden * static_cast<double>(k);
  return UnitVector::normalized({r * std::cos(phi), r * std::sin(phi), z});
}

std::optional<UnitVector> push_out_witness(const CapConfiguration& config, const Cap& cap,
                                           const BoundaryFrame& frame, double t) {
  for (double eps = kPushStart;; eps = std::min(2.0 * eps, kPushLimit)) {
    const UnitVector x = point_at(cap, frame, t, cap.radius() + eps);
    if (is_uncovered(config, x)) return x;
    if (eps >= kPushLimit) return std::nullopt;
  }
}

}  // namespace

bool is_uncovered(const CapConfiguration& config, const UnitVector& x) {
  return std::none_of(config.begin(), config.end(),
                      [&x](const Cap& c) { return cap_contains(c, x); });
}

AngleIntervalSet exposed_arcs(const CapConfiguration& config, std::size_t i) {
  if (i >= config.size()) {
    throw std::out_of_range("exposed_arcs: cap index " + std::to_string(i) +
                            " out of range for " + std::to_string(config.size()) + " caps");
  }
  const Cap& circle = config[i];
  const BoundaryFrame frame = boundary_frame(circle);
  std::vector<AngleInterval> covered;
  for (std::size_t j = 0; j < config.size(); ++j) {
    if (j == i) continue;
    const Cap& other = config[j];
    // Zero-radius caps cover at most one boundary point.
    if (other.radius() == 0.0 || caps_disjoint(circle, other)) continue;
    const AngleIntervalSet part = covered_interval(circle, frame, other);
    if (part.is_full()) return AngleIntervalSet::empty();
    covered.insert(covered.end(), part.intervals().begin(), part.intervals().end());
  }
  return AngleIntervalSet::from_pairs(covered).complement();
}

CoverageVerdict is_covered(const CapConfiguration& config) {
  CoverageVerdict verdict;
  if (config.empty()) {
    verdict.witness = UnitVector{0.0, 0.0, 1.0};
    return verdict;
  }
  if (std::any_of(config.begin(), config.end(),
                  [](const Cap& c) { return c.radius() >= kPi; })) {
    verdict.covered = true;
    return verdict;
  }

  struct Candidate {
    std::size_t cap_index;
    double t;
    double length;
  };
  std::vector<Candidate> candidates;
  bool saw_sliver = false;
  bool any_boundary = false;
  for (std::size_t i = 0; i < config.size(); ++i) {
    if (!config[i].has_boundary()) continue;
    any_boundary = true;
    const AngleIntervalSet raw = exposed_arcs(config, i);
    for (const Arc& arc : raw.arcs()) {
      if (arc.length < kSliverLength) {
        saw_sliver = true;
        continue;
      }
      verdict.exposed.push_back({i, arc.midpoint()});
      candidates.push_back({i, arc.midpoint(), arc.length});
    }
  }

  if (!any_boundary) {
    // Only zero-radius caps: at most config.size() points are covered, so one
    // of config.size() + 1 distinct lattice points is free.
    const std::size_t count = config.size() + 1;
    for (std::size_t k = 0; k < count; ++k) {
      const UnitVector x = lattice_point(k, count);
      if (is_uncovered(config, x)) {
        verdict.witness = x;
        return verdict;
      }
    }
    throw WitnessConstructionError("is_covered: no uncovered lattice point found");
  }

  if (candidates.empty()) {
    verdict.covered = true;
    verdict.marginal = saw_sliver;
    return verdict;
  }

  if (config.size() == 1) {
    verdict.witness = -config.front().center();
    return verdict;
  }

  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.length > b.length; });
  for (const Candidate& c : candidates) {
    const Cap& cap = config[c.cap_index];
    if (auto x = push_out_witness(config, cap, boundary_frame(cap), c.t)) {
      verdict.witness = *x;
      return verdict;
    }
  }
  throw WitnessConstructionError("is_covered: " + std::to_string(candidates.size()) +
                                 " exposed arcs but no verified uncovered point");
}

std::optional<UnitVector> find_uncovered_witness(const CapConfiguration& config) {
  return is_covered(config).witness;
}

}  // namespace capcover
