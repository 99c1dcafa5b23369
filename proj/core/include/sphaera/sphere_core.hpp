#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "sphaera/errors.hpp"

namespace sphaera {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Normalization / identity slack for unit vectors and dot products.
inline constexpr double kEpsUnit = 1e-12;
/// Slack for point-on-boundary and point-on-arc incidence tests.
inline constexpr double kEpsIncidence = 1e-9;

/// arccos with its argument clamped to [-1, 1].
double clamped_acos(double cosine) noexcept;

/// Wraps an angle into [0, 2*pi).
double wrap_two_pi(double angle) noexcept;

/// Wraps an angle into (-pi, pi].
double wrap_pi(double angle) noexcept;

/// A point of the unit sphere S^2. Construction renormalizes the input.
class SpherePoint {
 public:
  SpherePoint() : v_(0.0, 0.0, 1.0) {}
  explicit SpherePoint(const Vec3& v);
  SpherePoint(double x, double y, double z) : SpherePoint(Vec3(x, y, z)) {}

  const Vec3& vec() const noexcept { return v_; }
  double x() const noexcept { return v_.x(); }
  double y() const noexcept { return v_.y(); }
  double z() const noexcept { return v_.z(); }

  double dot(const SpherePoint& o) const noexcept { return v_.dot(o.v_); }
  double dot(const Vec3& o) const noexcept { return v_.dot(o); }
  SpherePoint antipode() const noexcept { return from_unit(-v_); }
  std::array<double, 3> to_array() const noexcept { return {v_.x(), v_.y(), v_.z()}; }

  // Skips renormalization; the caller guarantees |v| = 1 to rounding.
  static SpherePoint from_unit(const Vec3& v) noexcept {
    SpherePoint p;
    p.v_ = v;
    return p;
  }

 private:
  Vec3 v_;
};

double geodesic_distance(const SpherePoint& a, const SpherePoint& b) noexcept;

/// Unit tangent at `from` pointing along the minor arc toward `to`.
/// Throws BadConfiguration when the points coincide or are antipodal.
Vec3 tangent_toward(const SpherePoint& from, const SpherePoint& to);

/// Point reached by walking distance `s` from `from` along the unit tangent `dir`.
SpherePoint walk(const SpherePoint& from, const Vec3& dir, double s) noexcept;

/// Orthonormal (u, v) with (u, v, n) right-handed.
std::pair<Vec3, Vec3> tangent_basis(const Vec3& n) noexcept;

/// Points at spherical distance ra from a and rb from b (0, 1 or 2 of them).
std::vector<SpherePoint> small_circle_intersection(const SpherePoint& a, double ra,
                                                   const SpherePoint& b, double rb);

/// Points spread quasi-uniformly over S^2 (golden-angle spiral).
std::vector<SpherePoint> fibonacci_lattice(std::size_t n);

/// The minor great-circle segment between two non-antipodal points.
class GeodesicArc {
 public:
  GeodesicArc(const SpherePoint& a, const SpherePoint& b);

  const SpherePoint& a() const noexcept { return a_; }
  const SpherePoint& b() const noexcept { return b_; }
  double length() const noexcept { return geodesic_distance(a_, b_); }
  /// Point at fraction f in [0, 1] of the way from a to b.
  SpherePoint at(double f) const;
  /// Spherical distance from p to the closest point of the arc.
  double distance_to(const SpherePoint& p) const;

 private:
  SpherePoint a_;
  SpherePoint b_;
};

/// Closed hemisphere H(c) = { p : p . c >= 0 }.
class Hemisphere {
 public:
  explicit Hemisphere(const SpherePoint& center) : center_(center) {}

  const SpherePoint& center() const noexcept { return center_; }
  bool contains(const SpherePoint& p, double eps = kEpsUnit) const noexcept {
    return p.dot(center_) >= -eps;
  }

 private:
  SpherePoint center_;
};

bool hemisphere_contains(const Hemisphere& h, const SpherePoint& p, double eps = kEpsUnit) noexcept;

/// Intersection G cap H of two hemispheres that are neither equal nor opposite.
class Lune {
 public:
  Lune(const Hemisphere& g, const Hemisphere& h);

  const Hemisphere& g() const noexcept { return g_; }
  const Hemisphere& h() const noexcept { return h_; }

 private:
  Hemisphere g_;
  Hemisphere h_;
};

/// Centers (u_G, u_H) of the two boundary semicircles G/H and H/G.
std::pair<SpherePoint, SpherePoint> lune_face_centers(const Lune& lune);

/// Thickness of a lune: pi minus the distance of the hemisphere centers.
double lune_thickness(const Lune& lune) noexcept;

/// Thickness measured directly as the distance between the face centers.
double lune_thickness_from_faces(const Lune& lune);

/// For p on bd(K) and q on the arc from p orthogonal to bd(K), returns the
/// lune K cap K_perp whose second face is orthogonal to pq at q. Among all
/// lunes K cap M with q on bd(M) it has the smallest thickness, namely |pq|.
Lune narrowest_lune_through(const Hemisphere& k, const SpherePoint& p, const SpherePoint& q);

/// Rotation matrix about `axis` (right-hand rule).
Mat3 rotation_about(const Vec3& axis, double angle);

}  // namespace sphaera
