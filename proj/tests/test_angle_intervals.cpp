#include <numbers>
#include <random>
#include <vector>

#include "capcover/angle_intervals.hpp"
#include "doctest.h"

using capcover::AngleInterval;
using capcover::AngleIntervalSet;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

AngleIntervalSet random_set(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> start(-10.0, 10.0);
  std::uniform_real_distribution<double> length(0.0, 2.0);
  std::vector<AngleInterval> pairs;
  const int count = static_cast<int>(gen() % 6);
  for (int k = 0; k < count; ++k) {
    const double s = start(gen);
    pairs.push_back({s, s + length(gen)});
  }
  return AngleIntervalSet::from_pairs(pairs);
}

void check_canonical(const AngleIntervalSet& set) {
  const auto iv = set.intervals();
  for (std::size_t k = 0; k < iv.size(); ++k) {
    CHECK(iv[k].start >= 0.0);
    CHECK(iv[k].start < kTwoPi);
    CHECK(iv[k].length() > 0.0);
    CHECK(iv[k].end <= kTwoPi);
    if (k > 0) CHECK(iv[k].start > iv[k - 1].end);
  }
}
}  // namespace

TEST_CASE("wrap-around arcs are split at zero") {
  const auto set = AngleIntervalSet::arc(kTwoPi - 0.5, 1.0);
  REQUIRE(set.intervals().size() == 2);
  CHECK(set.intervals()[0].start == 0.0);
  CHECK(set.intervals()[0].end == doctest::Approx(0.5));
  CHECK(set.intervals()[1].start == doctest::Approx(kTwoPi - 0.5));
  CHECK(set.intervals()[1].end == kTwoPi);
  CHECK(set.measure() == doctest::Approx(1.0));

  const auto arcs = set.arcs();
  REQUIRE(arcs.size() == 1);
  CHECK(arcs[0].length == doctest::Approx(1.0));
  CHECK(arcs[0].midpoint() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("full circle has one canonical representation") {
  CHECK(AngleIntervalSet::arc(3.0, kTwoPi) == AngleIntervalSet::full());
  CHECK(AngleIntervalSet::arc(1.0, 7.0).is_full());
  const std::vector<AngleInterval> halves{{0.0, std::numbers::pi}, {std::numbers::pi, kTwoPi}};
  CHECK(AngleIntervalSet::from_pairs(halves) == AngleIntervalSet::full());
  CHECK(AngleIntervalSet::empty().complement() == AngleIntervalSet::full());
  CHECK(AngleIntervalSet::full().complement().is_empty());
}

TEST_CASE("overlapping pieces merge, zero-length pieces vanish") {
  const std::vector<AngleInterval> pairs{{1.0, 2.0}, {1.5, 3.0}, {4.0, 4.0}, {5.0, 5.5}};
  const auto set = AngleIntervalSet::from_pairs(pairs);
  REQUIRE(set.intervals().size() == 2);
  CHECK(set.intervals()[0] == AngleInterval{1.0, 3.0});
  CHECK(set.intervals()[1] == AngleInterval{5.0, 5.5});
  CHECK(set.contains(2.9));
  CHECK_FALSE(set.contains(3.5));
  CHECK(set.contains(5.0 + kTwoPi));
}

TEST_CASE("sliver filter drops short logical arcs") {
  const std::vector<AngleInterval> pairs{{1.0, 1.0 + 1e-10}, {2.0, 3.0}, {-1e-10, 2e-10}};
  const auto set = AngleIntervalSet::from_pairs(pairs).without_arcs_shorter_than(1e-9);
  REQUIRE(set.intervals().size() == 1);
  CHECK(set.intervals()[0] == AngleInterval{2.0, 3.0});
}

TEST_CASE("property: measure and complement algebra on random sets") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = random_set(gen);
    const auto t = random_set(gen);
    check_canonical(s);
    const auto c = s.complement();
    check_canonical(c);
    CHECK(s.measure() + c.measure() == doctest::Approx(kTwoPi).epsilon(1e-12));
    CHECK(c.complement() == s);

    const auto u = s.unite(t);
    check_canonical(u);
    CHECK(u.measure() <= s.measure() + t.measure() + 1e-12);
    CHECK(u.measure() + 1e-12 >= std::max(s.measure(), t.measure()));

    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    for (int k = 0; k < 20; ++k) {
      const double x = angle(gen);
      CHECK(u.contains(x) == (s.contains(x) || t.contains(x)));
      CHECK(c.contains(x) != s.contains(x));
    }
  }
}
