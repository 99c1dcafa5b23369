#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "sphaera/boundary.hpp"
#include "sphaera/check_report.hpp"
#include "sphaera/sphere_core.hpp"

namespace sphaera {

/// Convex geodesic polygon, vertices counterclockwise seen from outside.
class SpherePolygon {
 public:
  explicit SpherePolygon(std::vector<SpherePoint> vertices);

  const std::vector<SpherePoint>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }

 private:
  std::vector<SpherePoint> vertices_;
};

/// Piece of the circle of radius `radius` about `center`, from `start` to
/// `end` counterclockwise. A single arc with start == end is a full circle.
struct Arc {
  SpherePoint center;
  double radius = 0.0;
  SpherePoint start;
  SpherePoint end;
};

/// Convex body bounded by a cyclic chain of circular arcs.
class ArcBody {
 public:
  explicit ArcBody(std::vector<Arc> arcs);

  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

 private:
  std::vector<Arc> arcs_;
};

// A validated convex body in an open hemisphere. Both representations share
// one boundary parametrization (a chain of BoundaryPiece) and carry the
// boundary of their polar body, which every support-type query runs on.
class Body {
 public:
  explicit Body(SpherePolygon polygon);
  explicit Body(ArcBody arcs);

  bool is_polygon() const noexcept { return std::holds_alternative<SpherePolygon>(shape_); }
  const SpherePolygon& polygon() const;
  const ArcBody& arc_body() const;

  std::span<const BoundaryPiece> boundary() const noexcept { return boundary_; }
  std::span<const BoundaryPiece> polar_boundary() const noexcept { return polar_; }
  /// A point interior to the body.
  const SpherePoint& inner_point() const noexcept { return inner_; }
  /// Start points of every boundary piece.
  std::vector<SpherePoint> junctions() const;

 private:
  void finish();

  std::variant<SpherePolygon, ArcBody> shape_;
  std::vector<BoundaryPiece> boundary_;
  std::vector<BoundaryPiece> polar_;
  SpherePoint inner_;
};

struct BoundaryPoint {
  SpherePoint point;
  PieceLocus locus;
};

enum class PointKind { Smooth, Acute };

/// Centers of all hemispheres supporting the body at `at`.
struct NormalCone {
  BoundaryPoint at;
  std::variant<SpherePoint, GeodesicArc> centers;
};

struct BoundaryClass {
  PointKind kind = PointKind::Smooth;
  NormalCone cone;
};

struct TouchResult {
  BoundaryPoint point;
  /// Set when a whole geodesic edge lies on bd(H(k)).
  std::optional<GeodesicArc> tied_edge;
  bool unique = true;
};

/// Direction w with p . w > 0 for every input point, if one exists.
std::optional<SpherePoint> open_hemisphere_witness(std::span<const SpherePoint> points);

/// Smallest convex polygon containing the points (gnomonic projection plus a
/// planar monotone-chain hull).
SpherePolygon convex_hull(std::span<const SpherePoint> points);

/// Closed-region membership: p lies in every hemisphere whose center is on
/// the polar boundary.
bool contains(const Body& body, const SpherePoint& p, double eps = kEpsUnit);

/// Minimum of x . dir over the body. Exact whenever -dir is not in the body.
double support_value(const Body& body, const SpherePoint& dir) noexcept;

/// Fails, with the offending edge as witness, when the boundary contains a
/// geodesic segment longer than kEpsIncidence.
CheckReport is_strictly_convex(const Body& body);

BoundaryPoint boundary_point_at(const Body& body, const PieceLocus& locus);

/// Finds p on the boundary; throws NotOnBoundary beyond `tol`.
BoundaryPoint locate_boundary_point(const Body& body, const SpherePoint& p, double tol = kEpsIncidence);

BoundaryClass classify_boundary_point(const Body& body, const BoundaryPoint& p);

/// Point of the body minimizing x . k, for k on the polar boundary.
TouchResult touch_point(const Body& body, const SpherePoint& k, double tol = kEpsIncidence);

Body polar(const Body& body);

/// Loci spread along a piece chain in proportion to piece length; every
/// piece start is included.
std::vector<PieceLocus> sample_loci(std::span<const BoundaryPiece> pieces, std::size_t n);

std::vector<BoundaryPoint> boundary_sample(const Body& body, std::size_t n);

/// Points of bd(body°), i.e. centers of supporting hemispheres.
std::vector<SpherePoint> polar_boundary_sample(const Body& body, std::size_t n);

/// Last point of the body met by the geodesic leaving `from` along `dir`.
std::optional<BoundaryPoint> geodesic_exit(const Body& body, const SpherePoint& from, const Vec3& dir);

}  // namespace sphaera
