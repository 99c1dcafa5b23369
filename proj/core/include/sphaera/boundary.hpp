#pragma once

#include <span>
#include <utility>
#include <vector>

#include "sphaera/sphere_core.hpp"

namespace sphaera {

// One piece of a convex body's boundary: the arc of the circle of spherical
// radius `radius` about `center`, traversed counterclockwise (seen from
// outside the sphere) for `span` radians of angle about the center. The body
// lies on the center's side. radius == pi/2 makes the piece a geodesic edge
// whose center is the pole of its great circle.
//
// Points are x(t) = cos(r) c + sin(r) (cos t e1 + sin t e2), t in [0, span].
class BoundaryPiece {
 public:
  BoundaryPiece(const SpherePoint& center, double radius, const SpherePoint& start, double span);

  /// Builds the piece from its endpoints. A full circle is produced when
  /// `full_circle` is set and start == end.
  static BoundaryPiece from_endpoints(const SpherePoint& center, double radius, const SpherePoint& start,
                                      const SpherePoint& end, bool full_circle = false);

  const SpherePoint& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  double span() const noexcept { return span_; }
  double length() const noexcept { return span_ * sin_r_; }
  bool is_geodesic() const noexcept { return radius_ >= kHalfPi - kEpsUnit; }
  bool is_full_circle() const noexcept { return span_ >= kTwoPi - kEpsUnit; }

  SpherePoint point(double t) const noexcept;
  SpherePoint start() const noexcept { return point(0.0); }
  SpherePoint end() const noexcept { return point(span_); }

  /// Unit tangent in the direction of travel.
  Vec3 tangent(double t) const noexcept;

  /// Center of the unique hemisphere supporting the piece at x(t): the point
  /// a quarter turn from x(t) toward the circle's center.
  SpherePoint normal_center(double t) const noexcept;

  /// Angle parameter of a point near the piece's circle, in [0, 2 pi).
  double parameter_of(const Vec3& x) const noexcept;

  /// Minimum of x . dir over the piece, with the parameter attaining it.
  std::pair<double, double> min_dot(const Vec3& dir) const noexcept;

  /// Same piece with the parameter range restricted to [t0, t1].
  BoundaryPiece sub_piece(double t0, double t1) const;

 private:
  BoundaryPiece() = default;

  SpherePoint center_;
  double radius_ = 0.0;
  double cos_r_ = 0.0;
  double sin_r_ = 1.0;
  Vec3 e1_ = Vec3::UnitX();
  Vec3 e2_ = Vec3::UnitY();
  double span_ = 0.0;
};

/// Location on a piece list: piece index and parameter along it.
struct PieceLocus {
  std::size_t piece = 0;
  double t = 0.0;
};

/// Minimum of x . dir over a closed boundary and where it is attained.
struct BoundaryMin {
  double value = 0.0;
  PieceLocus at;
};

BoundaryMin boundary_min_dot(std::span<const BoundaryPiece> pieces, const Vec3& dir) noexcept;

/// Boundary of the polar body. For each piece: the arc of radius pi/2 - r about
/// the same center (dropped when the piece is a geodesic edge), followed by the
/// normal cone at its end vertex as a geodesic with that vertex as pole (dropped
/// when the junction is smooth).
std::vector<BoundaryPiece> polar_pieces(std::span<const BoundaryPiece> pieces);

/// Signed turning angle of the normal cone at the junction after piece i;
/// positive for a convex corner, ~0 for a smooth junction.
double junction_turn(std::span<const BoundaryPiece> pieces, std::size_t i);

/// Total length of a boundary.
double boundary_length(std::span<const BoundaryPiece> pieces) noexcept;

/// Locus at arc length `s` measured from the start of piece 0.
PieceLocus locus_at_length(std::span<const BoundaryPiece> pieces, double s) noexcept;

/// Arc length from the start of piece 0 to a locus.
double length_at_locus(std::span<const BoundaryPiece> pieces, const PieceLocus& at) noexcept;

}  // namespace sphaera
