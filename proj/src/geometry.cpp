#include "capcover/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "capcover/errors.hpp"
#include "capcover/quadrature.hpp"

namespace capcover {
namespace {

// Band around the dot-product threshold where cap_contains falls back to the
// exact angle comparison.
constexpr double kDotBand = 1e-12;
// Rounding allowance on the closed-cap test, so computed boundary points test
// as contained.
constexpr double kBoundarySlack = 1e-14;
// Slack on the containment test for concentric circles; absorbs rounding when
// a circle is tested against itself or a duplicate.
constexpr double kContainSlack = 1e-14;
// Below this |A cos t + B sin t| amplitude the centers are treated as collinear.
constexpr double kCollinearAmplitude = 1e-15;
// Width of the theta bands around 0 and 2a handled by quadrature.
constexpr double kDegenerateBand = 1e-8;

std::string describe(double v) { return std::to_string(v); }

}  // namespace

double norm(const Vec3& v) { return std::hypot(v.x, v.y, v.z); }

UnitVector::UnitVector(double x, double y, double z) : v_{x, y, z} {
  const double n = norm(v_);
  if (!(std::abs(n - 1.0) <= kNormTolerance)) {
    throw DomainError("UnitVector: |v| = " + describe(n) + " is not 1");
  }
}

UnitVector UnitVector::normalized(const Vec3& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw DomainError("UnitVector::normalized: zero or non-finite vector");
  }
  return UnitVector{Unchecked{}, (1.0 / n) * v};
}

Cap::Cap(const UnitVector& center, double radius)
    : center_(center), radius_(radius) {
  if (!(radius >= 0.0 && radius <= kPi)) {
    throw DomainError("Cap: radius " + describe(radius) + " outside [0, pi]");
  }
  fraction_ = p_from_a(radius);
  cos_radius_ = std::cos(radius);
}

double angular_distance(const UnitVector& u, const UnitVector& v) {
  return std::atan2(norm(cross(u, v)), dot(u, v));
}

bool cap_contains(const Cap& cap, const UnitVector& x) {
  const double d = dot(cap.center(), x);
  if (d > cap.cos_radius() + kDotBand) return true;
  if (d < cap.cos_radius() - kDotBand) return false;
  return angular_distance(cap.center(), x) <= cap.radius() + kBoundarySlack;
}

double p_from_a(double a) {
  if (!(a >= 0.0 && a <= kPi)) {
    throw DomainError("p_from_a: a = " + describe(a) + " outside [0, pi]");
  }
  const double s = std::sin(0.5 * a);
  return s * s;
}

double a_from_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("a_from_p: p = " + describe(p) + " outside [0, 1]");
  }
  return 2.0 * std::asin(std::sqrt(p));
}

BoundaryFrame boundary_frame(const Cap& cap) {
  if (!cap.has_boundary()) {
    throw DegenerateCapError("boundary_frame: cap radius " + describe(cap.radius()) +
                             " has no boundary circle");
  }
  const Vec3& c = cap.center();
  const double ax = std::abs(c.x);
  const double ay = std::abs(c.y);
  const double az = std::abs(c.z);
  Vec3 axis{0.0, 0.0, 1.0};
  if (ax <= ay && ax <= az) {
    axis = {1.0, 0.0, 0.0};
  } else if (ay <= az) {
    axis = {0.0, 1.0, 0.0};
  }
  const UnitVector e1 = UnitVector::normalized(axis - dot(axis, c) * c);
  const UnitVector e2 = UnitVector::normalized(cross(c, e1));
  return {e1, e2};
}

UnitVector point_at(const Cap& cap, const BoundaryFrame& frame, double t, double distance) {
  const Vec3 radial = std::cos(t) * frame.e1.vec() + std::sin(t) * frame.e2.vec();
  return UnitVector::normalized(std::cos(distance) * cap.center().vec() +
                                std::sin(distance) * radial);
}

UnitVector boundary_point(const Cap& cap, const BoundaryFrame& frame, double t) {
  return point_at(cap, frame, t, cap.radius());
}

UnitVector boundary_point(const Cap& cap, double t) {
  return boundary_point(cap, boundary_frame(cap), t);
}

AngleIntervalSet covered_interval(const Cap& circle, const Cap& other) {
  return covered_interval(circle, boundary_frame(circle), other);
}

AngleIntervalSet covered_interval(const Cap& circle, const BoundaryFrame& frame,
                                  const Cap& other) {
  if (!circle.has_boundary()) {
    throw DegenerateCapError("covered_interval: cap radius " + describe(circle.radius()) +
                             " has no boundary circle");
  }
  if (other.radius() >= kPi) return AngleIntervalSet::full();

  // boundary_point(t) . c_j >= cos a_j  <=>  A cos t + B sin t >= C
  const Vec3& cj = other.center();
  const double sin_a = std::sin(circle.radius());
  const double cos_a = std::cos(circle.radius());
  const double a_coef = sin_a * dot(frame.e1, cj);
  const double b_coef = sin_a * dot(frame.e2, cj);
  const double c_coef = other.cos_radius() - cos_a * dot(circle.center(), cj);
  const double amplitude = std::hypot(a_coef, b_coef);

  if (amplitude <= kCollinearAmplitude) {
    return c_coef <= kContainSlack ? AngleIntervalSet::full() : AngleIntervalSet::empty();
  }
  if (c_coef <= -amplitude) return AngleIntervalSet::full();
  if (c_coef >= amplitude) return AngleIntervalSet::empty();

  const double phase = std::atan2(b_coef, a_coef);
  const double half_width = std::acos(c_coef / amplitude);
  return AngleIntervalSet::arc(phase - half_width, 2.0 * half_width);
}

double overlap_fraction_q_quadrature(double theta, double a, double tol) {
  // Integrate over polar angle phi about the first center; the azimuthal
  // extent inside the second cap is 2 acos(k(phi)).
  const double sin_theta = std::sin(theta);
  const double cos_theta = std::cos(theta);
  const double cos_a = std::cos(a);
  const double inner = std::max(0.0, a - theta);  // fully inside the second cap
  const double lo = std::max(inner, theta - a);   // below this, fully outside
  const double full_part = 0.5 * (1.0 - std::cos(inner));
  if (!(a > lo) || sin_theta == 0.0) return full_part;
  auto integrand = [&](double phi) {
    const double k = (cos_a - cos_theta * std::cos(phi)) / (sin_theta * std::sin(phi));
    return std::sin(phi) * 2.0 * std::acos(std::clamp(k, -1.0, 1.0));
  };
  const QuadratureResult r = integrate_adaptive(integrand, lo, a, tol * 4.0 * kPi);
  return full_part + r.value / (4.0 * kPi);
}

double overlap_fraction_q(double theta, double a) {
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw DomainError("overlap_fraction_q: theta = " + describe(theta) + " outside [0, pi]");
  }
  if (!(a >= 0.0 && a <= kPi)) {
    throw DomainError("overlap_fraction_q: a = " + describe(a) + " outside [0, pi]");
  }
  if (a > 0.5 * kPi) {
    // Complements are caps of radius pi - a about the antipodes, also theta apart.
    return 2.0 * p_from_a(a) - 1.0 + overlap_fraction_q(theta, kPi - a);
  }
  if (theta >= 2.0 * a) return 0.0;
  if (theta == 0.0) return p_from_a(a);
  if (theta < kDegenerateBand || 2.0 * a - theta < kDegenerateBand) {
    return overlap_fraction_q_quadrature(theta, a);
  }

  // Intersection lens of two equal caps:
  //   area = 2 (pi - alpha - 2 beta cos a)
  // with alpha the lens vertex angle at the circle crossing points and beta
  // the half-angle subtended at each center, both written in atan2 form.
  const double h = 0.5 * theta;
  const double s = std::sqrt(std::max(0.0, std::sin(a - h) * std::sin(a + h)));
  const double alpha = 2.0 * std::atan2(std::sin(h), s);
  const double beta = std::atan2(s, std::cos(a) * std::sin(h));
  const double area = 2.0 * (kPi - alpha - 2.0 * beta * std::cos(a));
  return std::max(0.0, area / (4.0 * kPi));
}

}  // namespace capcover
