#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sphaera/check_report.hpp"
#include "sphaera/convex_body.hpp"

namespace sphaera {

/// Resolution knobs shared by every boundary sweep.
struct SweepOptions {
  std::size_t samples = 2048;
  double refine_tol = 1e-10;
};

inline constexpr double kDefaultCheckTolerance = 1e-6;
inline constexpr double kDefaultChordTolerance = 1e-8;

struct DiametralChord {
  SpherePoint p;
  SpherePoint q;
  double length = 0.0;
  /// Chords pivoting about a common endpoint belong to the same family.
  std::size_t family = 0;
};

struct DiameterResult {
  double delta = 0.0;
  std::vector<DiametralChord> chords;
};

struct ThicknessResult {
  double value = 0.0;
  SpherePoint k;
};

/// max over x in the body of |px|, with the point attaining it.
std::pair<double, SpherePoint> farthest_point(const Body& body, const SpherePoint& p) noexcept;
double farthest_distance(const Body& body, const SpherePoint& p) noexcept;

DiameterResult diameter(const Body& body, const SweepOptions& opts = {});

/// Boundary chords of length at least delta - tol, deduplicated by endpoint
/// proximity and grouped into families.
std::vector<DiametralChord> diametral_chords(const Body& body, double tol, const SweepOptions& opts = {});

/// Width of the body determined by the supporting hemisphere H(k).
double width_given_support(const Body& body, const SpherePoint& k);

/// The narrowest lune H(k) cap H(k') containing the body (one witness).
Lune narrowest_lune_containing(const Body& body, const SpherePoint& k);

/// Brute-force width: for grid_size tangent directions at k, the thinnest
/// lune H(k) cap H(k') containing the body with k' on that direction's great
/// circle, found by bisection on primal containment. Upper-bounds the width.
double width_oracle(const Body& body, const SpherePoint& k, std::size_t grid_size);

ThicknessResult thickness(const Body& body, const SweepOptions& opts = {});

/// Widths over a sweep of polar boundary points. `target` defaults to the
/// smallest width observed.
CheckReport check_constant_width(const Body& body, double tol = kDefaultCheckTolerance,
                                 const SweepOptions& opts = {}, std::optional<double> target = std::nullopt);

/// Farthest-point distances over a boundary sweep, compared to the diameter.
CheckReport check_constant_diameter(const Body& body, double tol = kDefaultCheckTolerance,
                                    const SweepOptions& opts = {});

bool chords_intersect(const DiametralChord& a, const DiametralChord& b, double tol = kEpsIncidence);

/// Verifies that sampled diametral chords pairwise intersect. Throws
/// NotConstantDiameter if the body fails check_constant_diameter at cd_tol.
CheckReport check_chord_intersections(const Body& body, std::size_t chord_count = 200,
                                      double cd_tol = kDefaultCheckTolerance, const SweepOptions& opts = {});

// Maps supporting hemispheres H(r) of a constant-diameter body to the
// diametral chord leaving their touch point along the great circle through r.
class SupportChordMap {
 public:
  explicit SupportChordMap(const Body& body, double tol = kDefaultCheckTolerance, const SweepOptions& opts = {});

  double delta() const noexcept { return delta_; }
  DiametralChord chord_for(const SpherePoint& r) const;

 private:
  const Body* body_;
  double delta_ = 0.0;
};

DiametralChord support_chord_correspondence(const Body& body, const SpherePoint& r,
                                            double tol = kDefaultCheckTolerance);

/// Angle between the chord at its first endpoint and the great circle
/// through that endpoint and r (zero when the chord is orthogonal to bd(H(r))).
double chord_orthogonality_residual(const DiametralChord& chord, const SpherePoint& r);

}  // namespace sphaera
