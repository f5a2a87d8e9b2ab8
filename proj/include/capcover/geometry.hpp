#pragma once

#include <numbers>
#include <utility>

#include "capcover/angle_intervals.hpp"

namespace capcover {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Plain 3-vector used for intermediate arithmetic.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
constexpr Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
constexpr Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double norm(const Vec3& v);

// A point on the unit sphere. Construction checks |v| = 1 to 1e-12.
class UnitVector {
 public:
  static constexpr double kNormTolerance = 1e-12;

  UnitVector(double x, double y, double z);
  explicit UnitVector(const Vec3& v) : UnitVector(v.x, v.y, v.z) {}

  // Scales a nonzero vector onto the sphere.
  static UnitVector normalized(const Vec3& v);

  double x() const noexcept { return v_.x; }
  double y() const noexcept { return v_.y; }
  double z() const noexcept { return v_.z; }
  const Vec3& vec() const noexcept { return v_; }
  operator const Vec3&() const noexcept { return v_; }

  UnitVector operator-() const { return UnitVector{-v_.x, -v_.y, -v_.z}; }

  friend bool operator==(const UnitVector&, const UnitVector&) = default;

 private:
  struct Unchecked {};
  UnitVector(Unchecked, const Vec3& v) : v_(v) {}

  Vec3 v_;
};

// Closed spherical cap: all points within angular distance `radius` of `center`.
class Cap {
 public:
  Cap(const UnitVector& center, double radius);

  const UnitVector& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  // Fraction of the sphere's area covered, sin^2(radius / 2).
  double area_fraction() const noexcept { return fraction_; }
  double cos_radius() const noexcept { return cos_radius_; }
  bool has_boundary() const noexcept { return radius_ > 0.0 && radius_ < kPi; }

  friend bool operator==(const Cap& a, const Cap& b) {
    return a.center_ == b.center_ && a.radius_ == b.radius_;
  }

 private:
  UnitVector center_;
  double radius_;
  double fraction_;
  double cos_radius_;
};

// Great-circle angle in [0, pi], via atan2(|u x v|, u . v).
double angular_distance(const UnitVector& u, const UnitVector& v);

// angular_distance(center, x) <= radius, with a 1e-14 rad rounding allowance.
bool cap_contains(const Cap& cap, const UnitVector& x);

// sin^2(a / 2), the area fraction of a cap of angular radius a in [0, pi].
double p_from_a(double a);
// 2 asin(sqrt(p)), inverse of p_from_a for p in [0, 1].
double a_from_p(double p);

struct BoundaryFrame {
  UnitVector e1;
  UnitVector e2;
};

// Orthonormal (e1, e2) completing a right-handed triple with the cap center.
// e1 is the Gram-Schmidt projection of the global axis least aligned with the
// center.
BoundaryFrame boundary_frame(const Cap& cap);

// cos(a) c + sin(a) (cos t e1 + sin t e2).
UnitVector boundary_point(const Cap& cap, double t);
UnitVector boundary_point(const Cap& cap, const BoundaryFrame& frame, double t);

// Point at angular distance `distance` from the center along azimuth t.
UnitVector point_at(const Cap& cap, const BoundaryFrame& frame, double t, double distance);

// Parameters t on the boundary circle of `circle` that lie in `other`.
AngleIntervalSet covered_interval(const Cap& circle, const Cap& other);
AngleIntervalSet covered_interval(const Cap& circle, const BoundaryFrame& frame,
                                  const Cap& other);

// Area of the intersection of two caps of angular radius a whose centers are
// theta apart, as a fraction of the sphere's area 4 pi.
double overlap_fraction_q(double theta, double a);

// Cross-section quadrature used by overlap_fraction_q near theta = 0 and
// theta = 2a. Exposed for testing.
double overlap_fraction_q_quadrature(double theta, double a, double tol = 1e-13);

}  // namespace capcover
