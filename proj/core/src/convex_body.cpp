#include "sphaera/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace sphaera {

namespace {

constexpr double kConvexSlack = 1e-9;

[[noreturn]] void invalid(const std::string& invariant) {
  throw GeometryError(ErrorKind::InvalidBody, "invariant violated: " + invariant);
}

std::vector<BoundaryPiece> polygon_pieces(const std::vector<SpherePoint>& v) {
  std::vector<BoundaryPiece> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const SpherePoint& a = v[i];
    const SpherePoint& b = v[(i + 1) % v.size()];
    const SpherePoint pole(a.vec().cross(b.vec()));
    out.emplace_back(pole, kHalfPi, a, geodesic_distance(a, b));
  }
  return out;
}

std::vector<BoundaryPiece> arc_pieces(const std::vector<Arc>& arcs) {
  std::vector<BoundaryPiece> out;
  out.reserve(arcs.size());
  const bool single = arcs.size() == 1;
  for (const Arc& a : arcs) {
    out.push_back(BoundaryPiece::from_endpoints(a.center, a.radius, a.start, a.end, single));
  }
  return out;
}

struct Projected {
  double u;
  double v;
  std::size_t index;
};

double cross2(const Projected& o, const Projected& a, const Projected& b) {
  return (a.u - o.u) * (b.v - o.v) - (a.v - o.v) * (b.u - o.u);
}

}  // namespace

SpherePolygon::SpherePolygon(std::vector<SpherePoint> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) invalid("a polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (geodesic_distance(vertices_[i], vertices_[j]) <= kEpsUnit) {
        invalid("vertices " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
    }
  }
  if (!open_hemisphere_witness(vertices_)) invalid("vertices must lie in a common open hemisphere");
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& a = vertices_[i].vec();
    const Vec3& b = vertices_[(i + 1) % n].vec();
    const Vec3 pole = a.cross(b).normalized();
    double widest = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double side = vertices_[j].dot(pole);
      if (side < -kEpsUnit) {
        invalid("convex counterclockwise turning (vertex " + std::to_string(j) + " lies right of edge " +
                std::to_string(i) + ")");
      }
      widest = std::max(widest, side);
    }
    if (widest <= kEpsUnit) invalid("non-empty interior (all vertices on one great circle)");
  }
}

ArcBody::ArcBody(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {
  if (arcs_.empty()) invalid("an arc body needs at least one arc");
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const Arc& a = arcs_[i];
    if (!(a.radius > 0.0) || a.radius > kHalfPi + kEpsUnit) {
      invalid("arc " + std::to_string(i) + " radius must lie in (0, pi/2]");
    }
    for (const SpherePoint* p : {&a.start, &a.end}) {
      if (std::abs(geodesic_distance(*p, a.center) - a.radius) > kEpsIncidence) {
        invalid("arc " + std::to_string(i) + " endpoints must lie at distance radius from its center");
      }
    }
    const Arc& next = arcs_[(i + 1) % arcs_.size()];
    if (geodesic_distance(a.end, next.start) > kEpsUnit) {
      invalid("arc chain: end of arc " + std::to_string(i) + " must equal start of the next arc");
    }
  }
}

Body::Body(SpherePolygon polygon) : shape_(std::move(polygon)) {
  boundary_ = polygon_pieces(std::get<SpherePolygon>(shape_).vertices());
  finish();
}

Body::Body(ArcBody arcs) : shape_(std::move(arcs)) {
  boundary_ = arc_pieces(std::get<ArcBody>(shape_).arcs());
  finish();
}

void Body::finish() {
  const std::size_t n = boundary_.size();
  const bool full_circle = n == 1 && boundary_.front().is_full_circle();
  if (n == 1 && !full_circle) invalid("a single arc must close into a full circle");
  if (!full_circle) {
    for (std::size_t i = 0; i < n; ++i) {
      if (junction_turn(boundary_, i) < -kConvexSlack) {
        invalid("convex: reflex corner after piece " + std::to_string(i));
      }
    }
  }
  polar_ = polar_pieces(boundary_);
  if (polar_.empty()) {
    throw GeometryError(ErrorKind::EmptyInterior, "body has no supporting hemispheres");
  }

  Vec3 normal_sum = Vec3::Zero();
  for (const PieceLocus& at : sample_loci(polar_, std::max<std::size_t>(64, 8 * n))) {
    const SpherePoint k = polar_[at.piece].point(at.t);
    if (boundary_min_dot(boundary_, k.vec()).value < -kConvexSlack) {
      invalid("convex: boundary leaves one of its own supporting hemispheres");
    }
    normal_sum += k.vec();
  }
  if (normal_sum.norm() < 1e-12 || boundary_min_dot(boundary_, normal_sum.normalized()).value <= kEpsUnit) {
    invalid("body must lie in an open hemisphere");
  }

  Vec3 point_sum = Vec3::Zero();
  for (const PieceLocus& at : sample_loci(boundary_, 64)) point_sum += boundary_[at.piece].point(at.t).vec();
  inner_ = SpherePoint(point_sum);
}

const SpherePolygon& Body::polygon() const {
  if (!is_polygon()) throw GeometryError(ErrorKind::BadConfiguration, "body is not a polygon");
  return std::get<SpherePolygon>(shape_);
}

const ArcBody& Body::arc_body() const {
  if (is_polygon()) throw GeometryError(ErrorKind::BadConfiguration, "body is not an arc body");
  return std::get<ArcBody>(shape_);
}

std::vector<SpherePoint> Body::junctions() const {
  std::vector<SpherePoint> out;
  out.reserve(boundary_.size());
  for (const auto& p : boundary_) out.push_back(p.start());
  return out;
}

std::optional<SpherePoint> open_hemisphere_witness(std::span<const SpherePoint> points) {
  if (points.empty()) return std::nullopt;
  // The best hemisphere center is the direction of the point of conv(points)
  // nearest the origin; Wolfe's active-set method finds it exactly.
  constexpr double kTiny = 1e-14;
  std::vector<Vec3> active{points.front().vec()};
  std::vector<double> lambda{1.0};
  Vec3 x = active.front();
  for (std::size_t outer = 0; outer < 8 * points.size() + 64; ++outer) {
    std::size_t j = 0;
    double jd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double d = points[i].vec().dot(x);
      if (d < jd) {
        jd = d;
        j = i;
      }
    }
    if (jd >= x.squaredNorm() - kTiny) break;
    const Vec3& pj = points[j].vec();
    if (std::any_of(active.begin(), active.end(), [&](const Vec3& a) { return (a - pj).norm() < kTiny; })) break;
    active.push_back(pj);
    lambda.push_back(0.0);
    for (;;) {
      // Nearest point to the origin on the affine hull of the active set.
      const auto m = static_cast<Eigen::Index>(active.size());
      Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(m + 1, m + 1);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
      for (Eigen::Index r = 0; r < m; ++r) {
        for (Eigen::Index c = 0; c < m; ++c) sys(r, c) = active[r].dot(active[c]);
        sys(r, m) = sys(m, r) = 1.0;
      }
      rhs(m) = 1.0;
      const Eigen::VectorXd sol = sys.completeOrthogonalDecomposition().solve(rhs);
      if (sol.head(m).minCoeff() > kTiny) {
        for (Eigen::Index r = 0; r < m; ++r) lambda[r] = sol(r);
        break;
      }
      double theta = 1.0;
      for (Eigen::Index r = 0; r < m; ++r) {
        if (sol(r) <= kTiny) theta = std::min(theta, lambda[r] / (lambda[r] - sol(r)));
      }
      std::vector<Vec3> kept;
      std::vector<double> kept_lambda;
      for (Eigen::Index r = 0; r < m; ++r) {
        const double l = lambda[r] + theta * (sol(r) - lambda[r]);
        if (l > kTiny) {
          kept.push_back(active[r]);
          kept_lambda.push_back(l);
        }
      }
      active = std::move(kept);
      lambda = std::move(kept_lambda);
      if (active.empty()) return std::nullopt;
    }
    x = Vec3::Zero();
    for (std::size_t r = 0; r < active.size(); ++r) x += lambda[r] * active[r];
    if (x.norm() < kTiny) return std::nullopt;
  }
  if (x.norm() < kTiny) return std::nullopt;
  const Vec3 w = x.normalized();
  for (const auto& p : points) {
    if (p.vec().dot(w) <= kEpsUnit) return std::nullopt;
  }
  return SpherePoint::from_unit(w);
}

SpherePolygon convex_hull(std::span<const SpherePoint> points) {
  const auto witness = open_hemisphere_witness(points);
  if (!witness) throw GeometryError(ErrorKind::NoHemisphere, "points are not contained in any open hemisphere");

  Vec3 centroid = Vec3::Zero();
  for (const auto& p : points) centroid += p.vec();
  Vec3 axis = witness->vec();
  if (centroid.norm() > 1e-15) {
    const Vec3 c = centroid.normalized();
    if (std::all_of(points.begin(), points.end(), [&](const SpherePoint& p) { return p.dot(c) > kEpsUnit; })) {
      axis = c;
    }
  }
  const auto [ua, ub] = tangent_basis(axis);

  std::vector<Projected> proj;
  proj.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec3& x = points[i].vec();
    const double h = x.dot(axis);
    proj.push_back({x.dot(ua) / h, x.dot(ub) / h, i});
  }
  std::sort(proj.begin(), proj.end(), [](const Projected& a, const Projected& b) {
    return a.u < b.u || (a.u == b.u && a.v < b.v);
  });
  proj.erase(std::unique(proj.begin(), proj.end(),
                         [](const Projected& a, const Projected& b) {
                           return std::abs(a.u - b.u) <= 1e-14 && std::abs(a.v - b.v) <= 1e-14;
                         }),
             proj.end());
  if (proj.size() < 3) throw GeometryError(ErrorKind::Degenerate, "hull has fewer than 3 vertices");

  auto turn_left = [](const Projected& o, const Projected& a, const Projected& b) {
    const double scale = std::hypot(a.u - o.u, a.v - o.v) * std::hypot(b.u - o.u, b.v - o.v);
    return cross2(o, a, b) > 1e-13 * scale;
  };
  std::vector<Projected> hull(2 * proj.size());
  std::size_t k = 0;
  for (const auto& p : proj) {
    while (k >= 2 && !turn_left(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  for (std::size_t i = proj.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && !turn_left(hull[k - 2], hull[k - 1], proj[i])) --k;
    hull[k++] = proj[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw GeometryError(ErrorKind::Degenerate, "hull has fewer than 3 vertices");

  std::vector<SpherePoint> vertices;
  vertices.reserve(hull.size());
  for (const auto& h : hull) vertices.push_back(points[h.index]);
  return SpherePolygon(std::move(vertices));
}

bool contains(const Body& body, const SpherePoint& p, double eps) {
  return boundary_min_dot(body.polar_boundary(), p.vec()).value >= -eps;
}

double support_value(const Body& body, const SpherePoint& dir) noexcept {
  return boundary_min_dot(body.boundary(), dir.vec()).value;
}

CheckReport is_strictly_convex(const Body& body) {
  CheckReport report;
  report.check = "strict-convexity";
  report.tolerance = kEpsIncidence;
  double longest = 0.0;
  for (const auto& piece : body.boundary()) {
    if (piece.is_geodesic() && piece.length() > longest) {
      longest = piece.length();
      if (longest > kEpsIncidence) {
        report.witnesses = {{"geodesic-edge", {piece.start(), piece.end()}, longest}};
      }
    }
  }
  report.observed_max = longest;
  report.verdict = range_verdict(report.target, report.observed_min, report.observed_max, report.tolerance);
  if (report.verdict) report.witnesses.clear();
  return report;
}

BoundaryPoint boundary_point_at(const Body& body, const PieceLocus& locus) {
  const auto pieces = body.boundary();
  if (locus.piece >= pieces.size()) throw GeometryError(ErrorKind::NotOnBoundary, "piece index out of range");
  return {pieces[locus.piece].point(locus.t), locus};
}

BoundaryPoint locate_boundary_point(const Body& body, const SpherePoint& p, double tol) {
  const auto pieces = body.boundary();
  double best = std::numeric_limits<double>::infinity();
  PieceLocus best_at;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const BoundaryPiece& piece = pieces[i];
    const double off = std::abs(geodesic_distance(p, piece.center()) - piece.radius());
    if (off > tol || off >= best) continue;
    double t = piece.parameter_of(p.vec());
    const double t_tol = tol / std::sin(piece.radius());
    if (!piece.is_full_circle() && t > piece.span() + t_tol) {
      if (t >= kTwoPi - t_tol) {
        t = 0.0;
      } else {
        continue;
      }
    }
    best = off;
    best_at = {i, std::min(t, piece.span())};
  }
  if (!std::isfinite(best)) {
    throw GeometryError(ErrorKind::NotOnBoundary, "point is not on the body boundary");
  }
  return {p, best_at};
}

BoundaryClass classify_boundary_point(const Body& body, const BoundaryPoint& bp) {
  const auto pieces = body.boundary();
  const std::size_t n = pieces.size();
  if (bp.locus.piece >= n) throw GeometryError(ErrorKind::NotOnBoundary, "piece index out of range");
  const BoundaryPiece& piece = pieces[bp.locus.piece];
  const double t = bp.locus.t;
  if (t < -kEpsIncidence || t > piece.span() + kEpsIncidence ||
      std::abs(geodesic_distance(bp.point, piece.point(t))) > kEpsIncidence) {
    throw GeometryError(ErrorKind::NotOnBoundary, "boundary point does not match its locus");
  }

  auto smooth = [&](const SpherePoint& k) { return BoundaryClass{PointKind::Smooth, {bp, k}}; };
  if (n == 1 && piece.is_full_circle()) return smooth(piece.normal_center(t));

  const double sin_r = std::sin(piece.radius());
  std::size_t before = n;
  if (t * sin_r <= kEpsIncidence) {
    before = (bp.locus.piece + n - 1) % n;
  } else if ((piece.span() - t) * sin_r <= kEpsIncidence) {
    before = bp.locus.piece;
  }
  if (before == n) return smooth(piece.normal_center(t));

  const BoundaryPiece& in = pieces[before];
  const BoundaryPiece& out = pieces[(before + 1) % n];
  if (junction_turn(pieces, before) <= kEpsIncidence) return smooth(out.normal_center(0.0));
  return {PointKind::Acute, {bp, GeodesicArc(in.normal_center(in.span()), out.normal_center(0.0))}};
}

TouchResult touch_point(const Body& body, const SpherePoint& k, double tol) {
  const auto pieces = body.boundary();
  const BoundaryMin m = boundary_min_dot(pieces, k.vec());
  if (m.value > tol) {
    throw GeometryError(ErrorKind::NotSupporting, "H(k) does not touch the body (k is interior to the polar)");
  }
  if (m.value < -tol) {
    throw GeometryError(ErrorKind::NotSupporting, "body is not contained in H(k)");
  }
  TouchResult out;
  out.point = {pieces[m.at.piece].point(m.at.t), m.at};
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const BoundaryPiece& piece = pieces[i];
    if (piece.is_geodesic() && piece.length() > kEpsIncidence && std::abs(piece.start().dot(k)) <= tol &&
        std::abs(piece.end().dot(k)) <= tol) {
      out.tied_edge = GeodesicArc(piece.start(), piece.end());
      out.unique = false;
      break;
    }
    const auto [v, t] = piece.min_dot(k.vec());
    if (v <= m.value + kEpsUnit && geodesic_distance(piece.point(t), out.point.point) > 1e-6) {
      out.unique = false;
    }
  }
  return out;
}

Body polar(const Body& body) {
  if (body.is_polygon()) {
    const auto& v = body.polygon().vertices();
    std::vector<SpherePoint> poles;
    poles.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) poles.emplace_back(v[i].vec().cross(v[(i + 1) % v.size()].vec()));
    return Body(SpherePolygon(std::move(poles)));
  }
  const auto pieces = body.polar_boundary();
  if (pieces.empty()) throw GeometryError(ErrorKind::EmptyInterior, "body has empty interior");
  std::vector<Arc> arcs;
  arcs.reserve(pieces.size());
  for (const auto& p : pieces) arcs.push_back({p.center(), p.radius(), p.start(), p.end()});
  // Share junction points exactly so the chain invariant holds bit-for-bit.
  for (std::size_t i = 0; i < arcs.size(); ++i) arcs[i].end = arcs[(i + 1) % arcs.size()].start;
  return Body(ArcBody(std::move(arcs)));
}

std::vector<PieceLocus> sample_loci(std::span<const BoundaryPiece> pieces, std::size_t n) {
  const std::size_t count = pieces.size();
  std::vector<std::size_t> per(count, 1);
  if (n > count) {
    const double total = boundary_length(pieces);
    const std::size_t extra = n - count;
    std::vector<double> share(count);
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < count; ++i) {
      share[i] = static_cast<double>(extra) * pieces[i].length() / total;
      const auto whole = static_cast<std::size_t>(std::floor(share[i]));
      per[i] += whole;
      assigned += whole;
      share[i] -= static_cast<double>(whole);
    }
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return share[a] > share[b]; });
    for (std::size_t i = 0; assigned < extra; ++i, ++assigned) ++per[order[i % count]];
  }
  std::vector<PieceLocus> out;
  out.reserve(std::max(n, count));
  for (std::size_t i = 0; i < count; ++i) {
    const double step = pieces[i].span() / static_cast<double>(per[i]);
    for (std::size_t j = 0; j < per[i]; ++j) out.push_back({i, step * static_cast<double>(j)});
  }
  return out;
}

std::vector<BoundaryPoint> boundary_sample(const Body& body, std::size_t n) {
  const auto pieces = body.boundary();
  std::vector<BoundaryPoint> out;
  for (const PieceLocus& at : sample_loci(pieces, n)) out.push_back({pieces[at.piece].point(at.t), at});
  return out;
}

std::vector<SpherePoint> polar_boundary_sample(const Body& body, std::size_t n) {
  const auto pieces = body.polar_boundary();
  std::vector<SpherePoint> out;
  for (const PieceLocus& at : sample_loci(pieces, n)) out.push_back(pieces[at.piece].point(at.t));
  return out;
}

std::optional<BoundaryPoint> geodesic_exit(const Body& body, const SpherePoint& from, const Vec3& dir) {
  Vec3 d = dir - dir.dot(from.vec()) * from.vec();
  if (d.norm() < 1e-15) return std::nullopt;
  d.normalize();
  const auto pieces = body.boundary();
  std::optional<BoundaryPoint> best;
  double best_s = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const BoundaryPiece& piece = pieces[i];
    const Vec3& c = piece.center().vec();
    const double a = c.dot(from.vec());
    const double b = c.dot(d);
    const double r = std::hypot(a, b);
    if (r < 1e-15) continue;
    const double ratio = std::cos(piece.radius()) / r;
    if (std::abs(ratio) > 1.0 + kEpsUnit) continue;
    const double phi = std::atan2(b, a);
    const double half = std::acos(std::clamp(ratio, -1.0, 1.0));
    const double t_tol = kEpsIncidence / std::sin(piece.radius());
    for (double s : {phi - half, phi + half}) {
      s = wrap_two_pi(s);
      if (s <= kEpsIncidence || s > kPi || s <= best_s) continue;
      const SpherePoint x = walk(from, d, s);
      double t = piece.parameter_of(x.vec());
      if (!piece.is_full_circle() && t > piece.span() + t_tol) {
        if (t < kTwoPi - t_tol) continue;
        t = 0.0;
      }
      best_s = s;
      best = BoundaryPoint{x, {i, std::min(t, piece.span())}};
    }
  }
  return best;
}

}  // namespace sphaera
