#include "capcover/check.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <sstream>

#include "capcover/coverage.hpp"
#include "capcover/estimation.hpp"
#include "capcover/geometry.hpp"
#include "capcover/moments.hpp"
#include "capcover/random.hpp"

namespace capcover {
namespace {

constexpr double kSigmas = 4.0;

struct Scale {
  int q_pairs;
  std::int64_t q_points;
  std::int64_t moment_reps;
  std::int64_t moment_points;
  // u0^2 is heavy-tailed near coverage; replications matter more than test points.
  std::int64_t second_reps;
  std::int64_t second_points;
  int coverage_configs;
  std::int64_t coverage_probes;
  std::int64_t sphere_samples;
};

constexpr Scale kFast{5, 400'000, 500, 500, 500, 500, 40, 10'000, 100'000};
constexpr Scale kFull{20, 10'000'000, 2000, 2000, 8000, 500, 300, 100'000, 1'000'000};

std::string fmt(const char* format, auto... args) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

CheckResult p_identity(const CheckContext& ctx) {
  double worst = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double a = kPi * k / 1000.0;
    const double p = ctx.p_from_a(a);
    worst = std::max(worst, std::abs(4.0 * p * (1.0 - p) - 0.5 * (1.0 - std::cos(2.0 * a))));
  }
  return {"p-identity", worst <= 1e-12, fmt("max |4p(1-p) - (1-cos 2a)/2| = %.3g", worst)};
}

CheckResult sandwich(const CheckContext& ctx) {
  int violations = 0;
  int cells = 0;
  for (std::int64_t n : {2, 5, 10, 50, 200}) {
    for (double p : {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.49}) {
      ++cells;
      const double a = a_from_p(p);
      const IntegralValue integral = u0_sq_integral(ModelParams::from_radius(n, a));
      const double p_bounds = ctx.p_from_a(a);
      if (!(p_bounds >= 0.0 && p_bounds <= 0.5)) {
        ++violations;
        continue;
      }
      const ModelParams bound_params = ModelParams::from_fraction(n, p_bounds);
      const double slack = integral.error + 1e-12;
      if (u0_sq_lower(bound_params) > integral.value + slack ||
          integral.value > u0_sq_upper(bound_params) + slack) {
        ++violations;
      }
    }
  }
  return {"sandwich", violations == 0, fmt("%d of %d cells violate lower <= integral <= upper",
                                           violations, cells)};
}

CheckResult q_kernel(const CheckContext& ctx, const Scale& scale) {
  Rng rng(Seed{ctx.seed, 1});
  int failures = 0;
  double worst_z = 0.0;
  for (int k = 0; k < scale.q_pairs; ++k) {
    const double a = 0.05 + (0.5 * kPi - 0.05) * rng.uniform01();
    const double theta = std::min(kPi, 2.0 * a) * rng.uniform01();
    if (std::abs(overlap_fraction_q(0.0, a) - ctx.p_from_a(a)) > 1e-10) ++failures;
    if (2.0 * a + 0.1 <= kPi && overlap_fraction_q(2.0 * a + 0.1, a) != 0.0) ++failures;
    double previous = overlap_fraction_q(0.0, a);
    for (int g = 1; g < 200; ++g) {
      const double q = overlap_fraction_q(kPi * g / 199.0, a);
      if (q > previous) ++failures;
      previous = q;
    }
    const Cap first(UnitVector{0.0, 0.0, 1.0}, a);
    const Cap second(UnitVector{std::sin(theta), 0.0, std::cos(theta)}, a);
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < scale.q_points; ++i) {
      const UnitVector x = sample_uniform_sphere(rng);
      if (cap_contains(first, x) && cap_contains(second, x)) ++hits;
    }
    const double m = static_cast<double>(scale.q_points);
    const double freq = static_cast<double>(hits) / m;
    const double se = std::max(std::sqrt(freq * (1.0 - freq) / m), 1.0 / m);
    const double z = std::abs(freq - overlap_fraction_q(theta, a)) / se;
    worst_z = std::max(worst_z, z);
    if (z > kSigmas) ++failures;
  }
  return {"q-kernel", failures == 0,
          fmt("%d failures over %d (theta, a) pairs, worst MC |z| = %.2f", failures,
              scale.q_pairs, worst_z)};
}

CheckResult first_moment(const CheckContext& ctx, const Scale& scale, CheckLevel level) {
  std::vector<std::pair<std::int64_t, double>> grid{{20, 0.1}};
  if (level == CheckLevel::full) {
    grid.clear();
    for (std::int64_t n : {5, 20, 100}) {
      for (double p : {0.02, 0.1, 0.3}) grid.emplace_back(n, p);
    }
  }
  int failures = 0;
  double worst_z = 0.0;
  std::uint64_t stream = 100;
  for (const auto& [n, p] : grid) {
    const double a = a_from_p(p);
    const TrialPlan plan{n, a, scale.moment_points, scale.moment_reps, Seed{ctx.seed, stream++}};
    const Estimate e = estimate_first_moment(plan, ctx.threads);
    const double analytic = std::pow(1.0 - ctx.p_from_a(a), static_cast<double>(n));
    // A cell with no uncovered hits has stderr 0; floor at one hit's worth.
    const double se = std::max(e.std_error, 1.0 / static_cast<double>(plan.replications * plan.test_points));
    const double z = std::abs(e.mean - analytic) / se;
    worst_z = std::max(worst_z, z);
    if (!(z <= kSigmas)) ++failures;
  }
  return {"first-moment", failures == 0,
          fmt("%d of %zu cells outside 4 stderr of (1-p)^N, worst |z| = %.2f", failures,
              grid.size(), worst_z)};
}

CheckResult second_moment(const CheckContext& ctx, const Scale& scale, CheckLevel level) {
  std::vector<std::pair<std::int64_t, double>> grid{{10, p_from_a(0.6)}};
  if (level == CheckLevel::full) {
    grid.clear();
    for (std::int64_t n : {5, 20, 100}) {
      for (double p : {0.02, 0.1, 0.3}) grid.emplace_back(n, p);
    }
  }
  int failures = 0;
  double worst_z = 0.0;
  std::uint64_t stream = 200;
  std::int64_t worst_n = 0;
  double worst_p = 0.0;
  for (const auto& [n, p] : grid) {
    const double a = a_from_p(p);
    const TrialPlan plan{n, a, scale.second_points, scale.second_reps, Seed{ctx.seed, stream++}};
    const Estimate e = estimate_second_moment(plan, ctx.threads);
    const double target = u0_sq_integral(ModelParams::from_radius(n, a)).value;
    const double pairs = static_cast<double>(plan.test_points) * static_cast<double>(plan.test_points - 1);
    const double se = std::max(e.std_error, 2.0 / (static_cast<double>(plan.replications) * pairs));
    const double z = std::abs(e.mean - target) / se;
    if (!(z <= worst_z)) {
      worst_z = z;
      worst_n = n;
      worst_p = p;
    }
    if (!(z <= kSigmas)) ++failures;
  }
  return {"second-moment", failures == 0,
          fmt("%d of %zu cells outside 4 stderr of the quadrature, worst |z| = %.2f at N=%lld p=%g",
              failures, grid.size(), worst_z, static_cast<long long>(worst_n), worst_p)};
}

CheckResult coverage_oracle(const CheckContext& ctx, const Scale& scale) {
  Rng rng(Seed{ctx.seed, 3});
  int failures = 0;
  int covered = 0;
  for (int k = 0; k < scale.coverage_configs; ++k) {
    const auto n = static_cast<std::int64_t>(1 + rng() % 15);
    const double a = 0.3 + 2.2 * rng.uniform01();
    const CapConfiguration config = draw_configuration(n, a, rng);
    try {
      const CoverageVerdict v = is_covered(config);
      if (v.covered) {
        ++covered;
        for (std::int64_t i = 0; i < scale.coverage_probes; ++i) {
          if (is_uncovered(config, sample_uniform_sphere(rng))) {
            ++failures;
            break;
          }
        }
      } else if (!v.witness || !is_uncovered(config, *v.witness)) {
        ++failures;
      }
    } catch (const std::exception&) {
      ++failures;
    }
  }
  return {"coverage-oracle", failures == 0,
          fmt("%d failures over %d configurations (%d covered)", failures,
              scale.coverage_configs, covered)};
}

CheckResult sampler_uniformity(const CheckContext& ctx, const Scale& scale) {
  Rng rng(Seed{ctx.seed, 4});
  std::vector<std::int64_t> bins(20, 0);
  double sx = 0.0, sy = 0.0, sz = 0.0;
  for (std::int64_t i = 0; i < scale.sphere_samples; ++i) {
    const UnitVector u = sample_uniform_sphere(rng);
    sx += u.x();
    sy += u.y();
    sz += u.z();
    const auto bin = std::min<std::int64_t>(19, static_cast<std::int64_t>((u.z() + 1.0) * 10.0));
    ++bins[static_cast<std::size_t>(bin)];
  }
  const double n = static_cast<double>(scale.sphere_samples);
  const double expected = n / 20.0;
  double chi2 = 0.0;
  for (auto count : bins) chi2 += (count - expected) * (count - expected) / expected;
  const double worst_mean = std::max({std::abs(sx / n), std::abs(sy / n), std::abs(sz / n)});
  return {"sampler-uniformity", chi2 < 43.8 && worst_mean <= 0.004,
          fmt("chi2(z, 20 bins) = %.2f over %lld draws, max |coordinate mean| = %.2g", chi2,
              static_cast<long long>(scale.sphere_samples), worst_mean)};
}

template <class F>
CheckResult guarded(const char* name, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

CheckContext::CheckContext() : p_from_a([](double a) { return capcover::p_from_a(a); }) {}

bool CheckReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

std::vector<std::string> CheckReport::failed_names() const {
  std::vector<std::string> names;
  for (const auto& r : results) {
    if (!r.passed) names.push_back(r.name);
  }
  return names;
}

CheckReport run_check(CheckLevel level, const CheckContext& ctx) {
  const Scale& scale = level == CheckLevel::full ? kFull : kFast;
  CheckReport report;
  report.results.push_back(guarded("p-identity", [&] { return p_identity(ctx); }));
  report.results.push_back(guarded("sandwich", [&] { return sandwich(ctx); }));
  report.results.push_back(guarded("q-kernel", [&] { return q_kernel(ctx, scale); }));
  report.results.push_back(
      guarded("first-moment", [&] { return first_moment(ctx, scale, level); }));
  report.results.push_back(
      guarded("second-moment", [&] { return second_moment(ctx, scale, level); }));
  report.results.push_back(guarded("coverage-oracle", [&] { return coverage_oracle(ctx, scale); }));
  report.results.push_back(
      guarded("sampler-uniformity", [&] { return sampler_uniformity(ctx, scale); }));
  return report;
}

void print_check_report(std::ostream& out, const CheckReport& report) {
  for (const auto& r : report.results) {
    char line[64];
    std::snprintf(line, sizeof line, "%-20s %s  ", r.name.c_str(), r.passed ? "PASS" : "FAIL");
    out << line << r.detail << '\n';
  }
  const auto failed = report.failed_names();
  if (failed.empty()) {
    out << "all " << report.results.size() << " checks passed\n";
  } else {
    out << failed.size() << " check(s) failed:";
    for (const auto& name : failed) out << ' ' << name;
    out << '\n';
  }
}

}  // namespace capcover
