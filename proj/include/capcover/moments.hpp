#pragma once

#include <cstdint>

namespace capcover {

// Cap count N with a consistent (p, a) pair, |p - sin^2(a/2)| <= 1e-12.
class ModelParams {
 public:
  static constexpr double kConsistencyTolerance = 1e-12;

  ModelParams(std::int64_t n, double p, double a);
  static ModelParams from_fraction(std::int64_t n, double p);
  static ModelParams from_radius(std::int64_t n, double a);

  std::int64_t n() const noexcept { return n_; }
  double p() const noexcept { return p_; }
  double a() const noexcept { return a_; }

 private:
  std::int64_t n_;
  double p_;
  double a_;
};

struct MomentReport {
  double e_u0 = 0.0;
  double e_u0sq_lower = 0.0;
  double e_u0sq_upper = 0.0;
  double e_u0sq_integral = 0.0;
  double quadrature_error = 0.0;
};

struct IntegralValue {
  double value = 0.0;
  double error = 0.0;
};

inline constexpr double kDefaultMomentTolerance = 1e-10;

// (1 - p)^N, via exp(N log1p(-p)).
double expected_u0(const ModelParams& params);

// 4 p (1 - p)^(N+1) + (1 - 2p)^N. Requires p <= 1/2.
double u0_sq_upper(const ModelParams& params);

// (1 - 2p)^N (1 - 4 p (1 - p)). Requires p <= 1/2.
double u0_sq_lower(const ModelParams& params);

// E[u0^2] = integral over [0, pi] of (1 - 2p + q(theta))^N sin(theta) / 2.
// The part beyond theta = 2a, where q vanishes, is added in closed form.
IntegralValue u0_sq_integral(const ModelParams& params, double tol = kDefaultMomentTolerance);

MomentReport moment_report(const ModelParams& params, double tol = kDefaultMomentTolerance);

// c ln(N) / N.
double threshold_p(std::int64_t n, double c);

}  // namespace capcover
