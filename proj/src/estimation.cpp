#include "capcover/estimation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "capcover/errors.hpp"
#include "capcover/parallel.hpp"

namespace capcover {
namespace {

struct Replication {
  bool covered = false;
  bool witness_failed = false;
  bool marginal = false;
  std::int64_t uncovered_points = 0;
};

std::int64_t count_uncovered(const CapConfiguration& config, std::int64_t test_points, Rng& rng) {
  std::int64_t uncovered = 0;
  for (std::int64_t k = 0; k < test_points; ++k) {
    if (is_uncovered(config, sample_uniform_sphere(rng))) ++uncovered;
  }
  return uncovered;
}

void record_verdict(const CapConfiguration& config, Replication& out) {
  try {
    const CoverageVerdict verdict = is_covered(config);
    out.covered = verdict.covered;
    out.marginal = verdict.marginal;
  } catch (const WitnessConstructionError&) {
    out.witness_failed = true;
  }
}

std::vector<Replication> run_replications(const TrialPlan& plan, unsigned threads,
                                          bool want_verdict, bool want_points) {
  plan.validate();
  std::vector<Replication> results(static_cast<std::size_t>(plan.replications));
  parallel_for(results.size(), threads, [&](std::size_t r) {
    Rng rng = replication_rng(plan, static_cast<std::int64_t>(r));
    const CapConfiguration config = draw_configuration(plan.n, plan.a, rng);
    if (want_verdict) record_verdict(config, results[r]);
    if (want_points) results[r].uncovered_points = count_uncovered(config, plan.test_points, rng);
  });
  return results;
}

CoverageEstimate summarize_coverage(const std::vector<Replication>& reps) {
  CoverageEstimate out;
  std::vector<double> indicators;
  indicators.reserve(reps.size());
  for (const auto& r : reps) {
    indicators.push_back(r.covered ? 1.0 : 0.0);
    out.covered_count += r.covered ? 1 : 0;
    out.witness_failures += r.witness_failed ? 1 : 0;
    out.marginal += r.marginal ? 1 : 0;
  }
  out.probability = estimate_from_samples(indicators);
  return out;
}

Estimate summarize_first_moment(const std::vector<Replication>& reps, std::int64_t m) {
  std::vector<double> fractions;
  fractions.reserve(reps.size());
  for (const auto& r : reps) {
    fractions.push_back(static_cast<double>(r.uncovered_points) / static_cast<double>(m));
  }
  return estimate_from_samples(fractions);
}

}  // namespace

void TrialPlan::validate() const {
  if (n < 0) throw DomainError("TrialPlan: N = " + std::to_string(n) + " is negative");
  if (test_points < 1) throw DomainError("TrialPlan: test points must be >= 1");
  if (replications < 1) throw DomainError("TrialPlan: replications must be >= 1");
  if (!(a >= 0.0 && a <= kPi)) {
    throw DomainError("TrialPlan: a = " + std::to_string(a) + " outside [0, pi]");
  }
}

Estimate estimate_from_samples(std::span<const double> samples) {
  Estimate e;
  e.count = static_cast<std::int64_t>(samples.size());
  if (samples.empty()) return e;
  double sum = 0.0;
  for (double s : samples) sum += s;
  e.mean = sum / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double squares = 0.0;
    for (double s : samples) squares += (s - e.mean) * (s - e.mean);
    const double variance = squares / static_cast<double>(samples.size() - 1);
    e.std_error = std::sqrt(variance / static_cast<double>(samples.size()));
  }
  return e;
}

Rng replication_rng(const TrialPlan& plan, std::int64_t replication) {
  return Rng(plan.seed, static_cast<std::uint64_t>(replication));
}

CapConfiguration draw_configuration(std::int64_t n, double a, Rng& rng) {
  CapConfiguration config;
  config.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
  for (std::int64_t i = 0; i < n; ++i) config.emplace_back(sample_uniform_sphere(rng), a);
  return config;
}

CapConfiguration sample_configuration(const TrialPlan& plan, std::int64_t replication) {
  plan.validate();
  if (replication < 0 || replication >= plan.replications) {
    throw std::out_of_range("sample_configuration: replication " + std::to_string(replication) +
                            " not below R = " + std::to_string(plan.replications));
  }
  Rng rng = replication_rng(plan, replication);
  return draw_configuration(plan.n, plan.a, rng);
}

Estimate estimate_u0(const CapConfiguration& config, std::int64_t test_points, Rng& rng) {
  if (test_points < 1) throw DomainError("estimate_u0: test points must be >= 1");
  const std::int64_t uncovered = count_uncovered(config, test_points, rng);
  const double m = static_cast<double>(test_points);
  const double fraction = static_cast<double>(uncovered) / m;
  Estimate e{fraction, 0.0, test_points};
  // Bernoulli sample variance with the M - 1 denominator.
  if (test_points > 1) e.std_error = std::sqrt(fraction * (1.0 - fraction) / (m - 1.0));
  return e;
}

Estimate estimate_first_moment(const TrialPlan& plan, unsigned threads) {
  return summarize_first_moment(run_replications(plan, threads, false, true), plan.test_points);
}

Estimate estimate_second_moment(const TrialPlan& plan, unsigned threads) {
  if (plan.test_points < 2) throw DomainError("estimate_second_moment: test points must be >= 2");
  const auto reps = run_replications(plan, threads, false, true);
  const double m = static_cast<double>(plan.test_points);
  std::vector<double> products;
  products.reserve(reps.size());
  for (const auto& r : reps) {
    const double k = static_cast<double>(r.uncovered_points);
    products.push_back(k * (k - 1.0) / (m * (m - 1.0)));
  }
  return estimate_from_samples(products);
}

CoverageEstimate estimate_coverage_probability(const TrialPlan& plan, unsigned threads) {
  return summarize_coverage(run_replications(plan, threads, true, false));
}

JointEstimate estimate_coverage_and_first_moment(const TrialPlan& plan, unsigned threads) {
  const auto reps = run_replications(plan, threads, true, true);
  return {summarize_coverage(reps), summarize_first_moment(reps, plan.test_points)};
}

}  // namespace capcover
