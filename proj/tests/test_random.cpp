#include <cmath>
#include <cstdint>
#include <vector>

#include "capcover/random.hpp"
#include "doctest.h"

using namespace capcover;

TEST_CASE("generator streams are pure functions of their key") {
  Rng a(Seed{42, 7}, 3);
  Rng b(Seed{42, 7}, 3);
  for (int k = 0; k < 1000; ++k) CHECK(a() == b());

  Rng c(Seed{42, 7}, 4);
  Rng d(Seed{42, 8}, 3);
  Rng e(Seed{43, 7}, 3);
  Rng f(Seed{42, 7}, 3);
  const auto first = f();
  CHECK(c() != first);
  CHECK(d() != first);
  CHECK(e() != first);
}

TEST_CASE("uniform01 lies in [0, 1)") {
  Rng rng(Seed{1, 0});
  double lo = 1.0, hi = 0.0;
  for (int k = 0; k < 100'000; ++k) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 1e-3);
  CHECK(hi > 1.0 - 1e-3);
}

TEST_CASE("sample_uniform_sphere is uniform (10^6 draws)") {
  Rng rng(Seed{2026, 0});
  constexpr int kDraws = 1'000'000;
  std::vector<int> bins(20, 0);
  double sx = 0, sy = 0, sz = 0;
  double worst_norm_error = 0.0;
  for (int k = 0; k < kDraws; ++k) {
    const UnitVector u = sample_uniform_sphere(rng);
    worst_norm_error = std::max(worst_norm_error, std::abs(norm(u) - 1.0));
    sx += u.x();
    sy += u.y();
    sz += u.z();
    ++bins[std::min(19, static_cast<int>((u.z() + 1.0) * 10.0))];
  }
  CHECK(worst_norm_error <= 1e-12);
  CHECK(std::abs(sx / kDraws) <= 0.004);
  CHECK(std::abs(sy / kDraws) <= 0.004);
  CHECK(std::abs(sz / kDraws) <= 0.004);
  const double expected = kDraws / 20.0;
  double chi2 = 0.0;
  for (int count : bins) chi2 += (count - expected) * (count - expected) / expected;
  // 0.999 quantile of chi-square with 19 degrees of freedom.
  CHECK(chi2 < 43.8);
}
