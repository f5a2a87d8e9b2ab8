#pragma once

#include <span>
#include <vector>

namespace capcover {

// Closed-open arc [start, end) of the circle, 0 <= start < end <= 2 pi.
struct AngleInterval {
  double start = 0.0;
  double end = 0.0;

  double length() const noexcept { return end - start; }
  friend bool operator==(const AngleInterval&, const AngleInterval&) = default;
};

// A logical arc that may wrap through 0: covers [start, start + length) mod 2 pi.
struct Arc {
  double start = 0.0;
  double length = 0.0;

  double midpoint() const noexcept;
};

// Normalized union of arcs on a circle parametrized by [0, 2 pi).
//
// Canonical form: intervals are disjoint, non-touching, sorted by start, each
// inside [0, 2 pi]. Arcs wrapping through 0 are split into [s, 2 pi) and
// [0, e). The full circle is the single interval [0, 2 pi).
class AngleIntervalSet {
 public:
  AngleIntervalSet() = default;

  static AngleIntervalSet empty() { return {}; }
  static AngleIntervalSet full();
  // Arc starting at `start` (any real, taken mod 2 pi) of the given length.
  static AngleIntervalSet arc(double start, double length);
  // Union of arbitrary (start, end) pairs with end >= start.
  static AngleIntervalSet from_pairs(std::span<const AngleInterval> pairs);

  std::span<const AngleInterval> intervals() const noexcept { return intervals_; }
  // Intervals with the pieces split at 0 rejoined.
  std::vector<Arc> arcs() const;

  bool is_empty() const noexcept { return intervals_.empty(); }
  bool is_full() const noexcept;
  double measure() const noexcept;
  bool contains(double t) const;

  AngleIntervalSet unite(const AngleIntervalSet& other) const;
  AngleIntervalSet complement() const;
  // Drops logical arcs shorter than min_length.
  AngleIntervalSet without_arcs_shorter_than(double min_length) const;

  friend bool operator==(const AngleIntervalSet&, const AngleIntervalSet&) = default;

 private:
  explicit AngleIntervalSet(std::vector<AngleInterval> canonical)
      : intervals_(std::move(canonical)) {}
  static AngleIntervalSet canonicalize(std::vector<AngleInterval> pieces);

  std::vector<AngleInterval> intervals_;
};

// Maps any real angle into [0, 2 pi).
double wrap_angle(double t);

}  // namespace capcover
