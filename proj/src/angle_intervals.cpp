#include "capcover/angle_intervals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace capcover {
namespace {

constexpr double kFullTurn = 2.0 * std::numbers::pi;

}  // namespace

double wrap_angle(double t) {
  double r = std::fmod(t, kFullTurn);
  if (r < 0.0) r += kFullTurn;
  // fmod of a tiny negative value can round up to exactly 2 pi.
  if (r >= kFullTurn) r = 0.0;
  return r;
}

double Arc::midpoint() const noexcept { return wrap_angle(start + 0.5 * length); }

AngleIntervalSet AngleIntervalSet::full() {
  return AngleIntervalSet{std::vector<AngleInterval>{{0.0, kFullTurn}}};
}

AngleIntervalSet AngleIntervalSet::arc(double start, double length) {
  const AngleInterval pair{start, start + length};
  return from_pairs(std::span<const AngleInterval>(&pair, 1));
}

AngleIntervalSet AngleIntervalSet::from_pairs(std::span<const AngleInterval> pairs) {
  std::vector<AngleInterval> pieces;
  pieces.reserve(pairs.size() + 1);
  for (const auto& [start, end] : pairs) {
    const double length = end - start;
    if (!(length > 0.0)) continue;
    if (length >= kFullTurn) return full();
    const double s = wrap_angle(start);
    const double e = s + length;
    if (e > kFullTurn) {
      pieces.push_back({s, kFullTurn});
      pieces.push_back({0.0, e - kFullTurn});
    } else {
      pieces.push_back({s, e});
    }
  }
  return canonicalize(std::move(pieces));
}

AngleIntervalSet AngleIntervalSet::canonicalize(std::vector<AngleInterval> pieces) {
  std::erase_if(pieces, [](const AngleInterval& i) { return !(i.end > i.start); });
  std::sort(pieces.begin(), pieces.end(),
            [](const AngleInterval& a, const AngleInterval& b) { return a.start < b.start; });
  std::vector<AngleInterval> merged;
  merged.reserve(pieces.size());
  for (const auto& piece : pieces) {
    if (!merged.empty() && piece.start <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, piece.end);
    } else {
      merged.push_back(piece);
    }
  }
  if (merged.size() == 1 && merged.front().start <= 0.0 && merged.front().end >= kFullTurn) {
    return full();
  }
  return AngleIntervalSet{std::move(merged)};
}

bool AngleIntervalSet::is_full() const noexcept {
  return intervals_.size() == 1 && intervals_.front().start == 0.0 &&
         intervals_.front().end == kFullTurn;
}

double AngleIntervalSet::measure() const noexcept {
  double total = 0.0;
  for (const auto& i : intervals_) total += i.length();
  return total;
}

bool AngleIntervalSet::contains(double t) const {
  const double u = wrap_angle(t);
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [u](const AngleInterval& i) { return u >= i.start && u < i.end; });
}

std::vector<Arc> AngleIntervalSet::arcs() const {
  std::vector<Arc> out;
  if (intervals_.empty()) return out;
  if (is_full()) return {{0.0, kFullTurn}};
  std::size_t first = 0;
  std::size_t last = intervals_.size();
  const bool wraps = intervals_.size() > 1 && intervals_.front().start == 0.0 &&
                     intervals_.back().end == kFullTurn;
  if (wraps) {
    out.push_back({intervals_.back().start,
                   intervals_.back().length() + intervals_.front().length()});
    first = 1;
    last = intervals_.size() - 1;
  }
  for (std::size_t k = first; k < last; ++k) {
    out.push_back({intervals_[k].start, intervals_[k].length()});
  }
  return out;
}

AngleIntervalSet AngleIntervalSet::unite(const AngleIntervalSet& other) const {
  std::vector<AngleInterval> pieces = intervals_;
  pieces.insert(pieces.end(), other.intervals_.begin(), other.intervals_.end());
  return canonicalize(std::move(pieces));
}

AngleIntervalSet AngleIntervalSet::complement() const {
  std::vector<AngleInterval> gaps;
  double cursor = 0.0;
  for (const auto& i : intervals_) {
    if (i.start > cursor) gaps.push_back({cursor, i.start});
    cursor = i.end;
  }
  if (cursor < kFullTurn) gaps.push_back({cursor, kFullTurn});
  return AngleIntervalSet{std::move(gaps)};
}

AngleIntervalSet AngleIntervalSet::without_arcs_shorter_than(double min_length) const {
  std::vector<AngleInterval> kept;
  for (const auto& a : arcs()) {
    if (a.length >= min_length) kept.push_back({a.start, a.start + a.length});
  }
  return from_pairs(kept);
}

}  // namespace capcover
