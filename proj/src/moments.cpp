#include "capcover/moments.hpp"

#include <cmath>
#include <string>

#include "capcover/errors.hpp"
#include "capcover/geometry.hpp"
#include "capcover/quadrature.hpp"

namespace capcover {
namespace {

void require_half_domain(const ModelParams& params, const char* op) {
  if (params.p() > 0.5) {
    throw DomainError(std::string(op) + ": p = " + std::to_string(params.p()) +
                      " exceeds 1/2");
  }
}

// (1 - x)^N for x in [0, 1].
double survival_power(double x, std::int64_t n) {
  if (n == 0) return 1.0;
  if (x >= 1.0) return 0.0;
  return std::exp(static_cast<double>(n) * std::log1p(-x));
}

}  // namespace

ModelParams::ModelParams(std::int64_t n, double p, double a) : n_(n), p_(p), a_(a) {
  if (n < 0) throw DomainError("ModelParams: N = " + std::to_string(n) + " is negative");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("ModelParams: p = " + std::to_string(p) + " outside [0, 1]");
  }
  if (!(std::abs(p - p_from_a(a)) <= kConsistencyTolerance)) {
    throw DomainError("ModelParams: p and a are inconsistent");
  }
}

ModelParams ModelParams::from_fraction(std::int64_t n, double p) {
  return ModelParams(n, p, a_from_p(p));
}

ModelParams ModelParams::from_radius(std::int64_t n, double a) {
  return ModelParams(n, p_from_a(a), a);
}

double expected_u0(const ModelParams& params) { return survival_power(params.p(), params.n()); }

double u0_sq_upper(const ModelParams& params) {
  require_half_domain(params, "u0_sq_upper");
  const double p = params.p();
  return 4.0 * p * survival_power(p, params.n() + 1) + survival_power(2.0 * p, params.n());
}

double u0_sq_lower(const ModelParams& params) {
  require_half_domain(params, "u0_sq_lower");
  const double p = params.p();
  return survival_power(2.0 * p, params.n()) * (1.0 - 4.0 * p * (1.0 - p));
}

IntegralValue u0_sq_integral(const ModelParams& params, double tol) {
  require_half_domain(params, "u0_sq_integral");
  if (!(tol > 0.0)) throw DomainError("u0_sq_integral: tolerance must be positive");
  const double p = params.p();
  const double a = params.a();
  const std::int64_t n = params.n();
  if (n == 0 || p == 0.0) return {1.0, 0.0};

  // Beyond 2a both points survive with probability (1 - 2p)^N; the sin/2
  // weight integrates to (1 + cos 2a) / 2 = cos^2 a.
  const double cos_a = std::cos(a);
  const double tail = survival_power(2.0 * p, n) * cos_a * cos_a;

  const double kink = std::min(2.0 * a, kPi);
  auto integrand = [&](double theta) {
    const double joint = 2.0 * p - overlap_fraction_q(theta, a);
    return survival_power(std::max(0.0, joint), n) * 0.5 * std::sin(theta);
  };
  const QuadratureResult head = integrate_adaptive(integrand, 0.0, kink, tol);
  return {head.value + tail, head.error};
}

MomentReport moment_report(const ModelParams& params, double tol) {
  const IntegralValue integral = u0_sq_integral(params, tol);
  return {expected_u0(params), u0_sq_lower(params), u0_sq_upper(params), integral.value,
          integral.error};
}

double threshold_p(std::int64_t n, double c) {
  if (n < 2) throw DomainError("threshold_p: N = " + std::to_string(n) + " < 2");
  if (!(c >= 0.0)) throw DomainError("threshold_p: c = " + std::to_string(c) + " is negative");
  const double nd = static_cast<double>(n);
  const double p = c * std::log(nd) / nd;
  if (!(p <= 1.0)) {
    throw DomainError("threshold_p: c ln N / N = " + std::to_string(p) + " exceeds 1");
  }
  return p;
}

}  // namespace capcover
