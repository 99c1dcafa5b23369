#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sphaera/convex_body.hpp"

namespace sphaera {

struct ReuleauxSpec {
  int n = 3;
  double delta = 1.0;
  /// Orthogonal, det +1; applied to the canonical body centered at the north pole.
  Mat3 pose = Mat3::Identity();
  std::optional<std::uint64_t> seed;
  /// Scale of the random vertex perturbation, relative to delta.
  double jitter = 0.15;
};

/// Throws PrecondViolation unless n is odd and >= 3, 0 < delta < pi/2 and
/// pose is a rotation.
void validate(const ReuleauxSpec& spec);

/// Disk of radius rho about c, rho in (0, pi/4).
Body ball(const SpherePoint& c, double rho);

/// Circumradius R of the regular n-gon whose (n-1)/2-step diagonals have
/// length delta, by bisection on the spherical law of cosines.
double reuleaux_circumradius(int n, double delta);

/// Vertices of the regular Reuleaux polygon, counterclockwise.
std::vector<SpherePoint> regular_reuleaux_vertices(const ReuleauxSpec& spec);

/// Reuleaux polygon on the given vertices: arc i runs from vertex i-1 to
/// vertex i and is centered at vertex i+m, m = (n-1)/2.
Body reuleaux_from_vertices(std::span<const SpherePoint> vertices, double delta);

Body regular_reuleaux(const ReuleauxSpec& spec);

/// Intersection of the disks of radius delta about the points.
Body ball_intersection(std::span<const SpherePoint> points, double delta);

struct RandomReuleaux {
  Body body;
  std::vector<SpherePoint> vertices;
  int attempts = 0;
};

/// Seeded non-regular Reuleaux polygon: vertex chain with every
/// (n-1)/2-step diagonal equal to delta, closed by a two-circle solve,
/// retried until the body passes check_constant_diameter at 1e-6.
RandomReuleaux random_reuleaux(const ReuleauxSpec& spec);

/// Lens B(a, delta) cap B(b, delta), where b lies at distance delta from a
/// in the tangent direction at angle `heading`.
Body lens(const SpherePoint& a, double delta, double heading = 0.0);

/// Intersection of disks of radius delta about `point_count` seeded random
/// points drawn from a cap of radius delta / 2.
Body random_ball_intersection(std::uint64_t seed, int point_count, double delta);

}  // namespace sphaera
