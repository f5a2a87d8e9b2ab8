#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "capcover/coverage.hpp"
#include "capcover/random.hpp"

namespace capcover {

struct TrialPlan {
  std::int64_t n = 0;          // caps per configuration
  double a = 0.0;              // angular radius
  std::int64_t test_points = 1;
  std::int64_t replications = 1;
  Seed seed;

  // Throws DomainError unless n >= 0, test_points >= 1, replications >= 1 and
  // a is in [0, pi].
  void validate() const;
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t count = 0;
};

// Sample mean and standard error (sample sd / sqrt(count)), summed in order.
Estimate estimate_from_samples(std::span<const double> samples);

struct CoverageEstimate {
  Estimate probability;
  std::int64_t covered_count = 0;
  // Replications whose exposed arcs yielded no verified witness; counted as
  // not covered.
  std::int64_t witness_failures = 0;
  std::int64_t marginal = 0;
};

// The generator that drives replication r: centers first, then test points.
Rng replication_rng(const TrialPlan& plan, std::int64_t replication);

CapConfiguration draw_configuration(std::int64_t n, double a, Rng& rng);
CapConfiguration sample_configuration(const TrialPlan& plan, std::int64_t replication);

// Fraction of `test_points` uniform points that no cap contains.
Estimate estimate_u0(const CapConfiguration& config, std::int64_t test_points, Rng& rng);

Estimate estimate_first_moment(const TrialPlan& plan, unsigned threads = 1);

// Per replication, k (k - 1) / (M (M - 1)) with k uncovered of M points, an
// unbiased estimate of u0^2. Requires M >= 2.
Estimate estimate_second_moment(const TrialPlan& plan, unsigned threads = 1);

CoverageEstimate estimate_coverage_probability(const TrialPlan& plan, unsigned threads = 1);

// One pass per replication computing both the exact verdict and the sampled
// uncovered fraction on the same configuration.
struct JointEstimate {
  CoverageEstimate coverage;
  Estimate first_moment;
};
JointEstimate estimate_coverage_and_first_moment(const TrialPlan& plan, unsigned threads = 1);

}  // namespace capcover
