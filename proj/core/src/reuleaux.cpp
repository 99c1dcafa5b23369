#include "sphaera/reuleaux.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "sphaera/width_diameter.hpp"

namespace sphaera {

namespace {

constexpr int kMaxAttempts = 100;

[[noreturn]] void precondition(const std::string& what) { throw GeometryError(ErrorKind::PrecondViolation, what); }

SpherePoint apply(const Mat3& pose, const Vec3& v) { return SpherePoint(pose * v); }

struct CircleArc {
  std::size_t circle;
  double start;
  double length;
};

// Maximal parameter ranges of the circle of radius delta about points[i]
// lying inside every other disk. Returns nullopt when no constraint applies.
std::optional<std::vector<std::pair<double, double>>> free_ranges(std::span<const SpherePoint> points,
                                                                  std::size_t i, double delta, const Vec3& e1,
                                                                  const Vec3& e2) {
  const double cd = std::cos(delta);
  const double sd = std::sin(delta);
  std::vector<std::pair<double, double>> intervals;  // (center angle, half width)
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (j == i) continue;
    const Vec3& q = points[j].vec();
    const double a = e1.dot(q);
    const double b = e2.dot(q);
    const double r = std::hypot(a, b) * sd;
    if (r < 1e-15) continue;
    const double t = cd * (1.0 - points[i].dot(q)) / r;
    if (t <= -1.0) continue;
    if (t >= 1.0 - 1e-15) return std::vector<std::pair<double, double>>{};
    intervals.emplace_back(std::atan2(b, a), std::acos(t));
  }
  if (intervals.empty()) return std::nullopt;

  std::vector<double> cuts;
  for (const auto& [c, h] : intervals) {
    cuts.push_back(wrap_two_pi(c - h));
    cuts.push_back(wrap_two_pi(c + h));
  }
  std::sort(cuts.begin(), cuts.end());
  auto inside = [&](double phi) {
    return std::all_of(intervals.begin(), intervals.end(),
                       [&](const auto& iv) { return std::abs(wrap_pi(phi - iv.first)) <= iv.second; });
  };
  const std::size_t m = cuts.size();
  std::vector<bool> member(m);
  for (std::size_t k = 0; k < m; ++k) {
    double len = (k + 1 < m ? cuts[k + 1] : cuts[0] + kTwoPi) - cuts[k];
    member[k] = len > 0.0 && inside(cuts[k] + 0.5 * len);
  }
  std::vector<std::pair<double, double>> runs;
  const auto first_gap = std::find(member.begin(), member.end(), false);
  if (first_gap == member.end()) return std::nullopt;
  const std::size_t offset = static_cast<std::size_t>(first_gap - member.begin());
  for (std::size_t step = 0; step < m; ++step) {
    const std::size_t k = (offset + step) % m;
    if (!member[k]) continue;
    double len = (k + 1 < m ? cuts[k + 1] : cuts[0] + kTwoPi) - cuts[k];
    const std::size_t prev = (k + m - 1) % m;
    if (step > 0 && member[prev] && !runs.empty()) {
      runs.back().second += len;
    } else {
      runs.emplace_back(cuts[k], len);
    }
  }
  return runs;
}

}  // namespace

void validate(const ReuleauxSpec& spec) {
  if (spec.n < 3 || spec.n % 2 == 0) precondition("n must be odd and at least 3");
  if (!(spec.delta > 0.0) || !(spec.delta < kHalfPi)) precondition("delta must lie in (0, pi/2)");
  const Mat3 gram = spec.pose.transpose() * spec.pose;
  if (!gram.isApprox(Mat3::Identity(), 1e-10) || spec.pose.determinant() < 0.0) {
    precondition("pose must be a rotation matrix");
  }
  if (!(spec.jitter >= 0.0)) precondition("jitter must be non-negative");
}

Body ball(const SpherePoint& c, double rho) {
  if (!(rho > 0.0) || !(rho < kPi / 4.0)) precondition("ball radius must lie in (0, pi/4)");
  const SpherePoint start = walk(c, tangent_basis(c.vec()).first, rho);
  return Body(ArcBody({Arc{c, rho, start, start}}));
}

double reuleaux_circumradius(int n, double delta) {
  const int m = (n - 1) / 2;
  const double c = std::cos(kTwoPi * m / n);
  const double cd = std::cos(delta);
  auto residual = [&](double r) {
    const double cr = std::cos(r);
    const double sr = std::sin(r);
    return cr * cr + sr * sr * c - cd;
  };
  double lo = 0.0;
  double hi = kHalfPi;
  if (residual(lo) <= 0.0 || residual(hi) >= 0.0) {
    throw GeometryError(ErrorKind::NoSolution, "no circumradius in (0, pi/2) for n = " + std::to_string(n));
  }
  // residual is strictly decreasing on (0, pi/2).
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (residual(mid) > 0.0 ? lo : hi) = mid;
  }
  return std::abs(residual(lo)) <= std::abs(residual(hi)) ? lo : hi;
}

std::vector<SpherePoint> regular_reuleaux_vertices(const ReuleauxSpec& spec) {
  validate(spec);
  const double r = reuleaux_circumradius(spec.n, spec.delta);
  std::vector<SpherePoint> out;
  out.reserve(static_cast<std::size_t>(spec.n));
  for (int j = 0; j < spec.n; ++j) {
    const double a = kTwoPi * j / spec.n;
    out.push_back(apply(spec.pose, Vec3(std::sin(r) * std::cos(a), std::sin(r) * std::sin(a), std::cos(r))));
  }
  return out;
}

Body reuleaux_from_vertices(std::span<const SpherePoint> vertices, double delta) {
  const std::size_t n = vertices.size();
  if (n < 3 || n % 2 == 0) precondition("a Reuleaux polygon needs an odd number (>= 3) of vertices");
  const std::size_t m = (n - 1) / 2;
  std::vector<Arc> arcs;
  arcs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    arcs.push_back({vertices[(i + m) % n], delta, vertices[(i + n - 1) % n], vertices[i]});
  }
  return Body(ArcBody(std::move(arcs)));
}

Body regular_reuleaux(const ReuleauxSpec& spec) {
  return reuleaux_from_vertices(regular_reuleaux_vertices(spec), spec.delta);
}

Body ball_intersection(std::span<const SpherePoint> input, double delta) {
  if (!(delta > 0.0) || delta > kHalfPi) precondition("disk radius must lie in (0, pi/2]");
  std::vector<SpherePoint> points;
  for (const auto& p : input) {
    const bool dup = std::any_of(points.begin(), points.end(),
                                 [&](const SpherePoint& q) { return geodesic_distance(p, q) <= kEpsUnit; });
    if (!dup) points.push_back(p);
  }
  if (points.empty()) precondition("ball intersection needs at least one point");
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (geodesic_distance(points[i], points[j]) > delta + kEpsUnit) {
        precondition("pairwise distances must not exceed delta");
      }
    }
  }
  if (!open_hemisphere_witness(points)) precondition("points must lie in an open hemisphere");

  auto full_disk = [&](const SpherePoint& c) {
    const SpherePoint start = walk(c, tangent_basis(c.vec()).first, delta);
    return Body(ArcBody({Arc{c, delta, start, start}}));
  };
  if (points.size() == 1) return full_disk(points.front());

  const double cd = std::cos(delta);
  const double sd = std::sin(delta);
  std::vector<CircleArc> pieces;
  std::vector<std::pair<Vec3, Vec3>> bases;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto basis = tangent_basis(points[i].vec());
    bases.push_back(basis);
    const auto ranges = free_ranges(points, i, delta, basis.first, basis.second);
    if (!ranges) return full_disk(points[i]);
    for (const auto& [start, len] : *ranges) {
      if (len * sd > 1e-10) pieces.push_back({i, start, len});
    }
  }
  if (pieces.size() < 2) throw GeometryError(ErrorKind::Degenerate, "ball intersection has a degenerate boundary");

  auto circle_point = [&](std::size_t i, double phi) {
    const auto& [e1, e2] = bases[i];
    return SpherePoint(cd * points[i].vec() + sd * (std::cos(phi) * e1 + std::sin(phi) * e2));
  };
  Vec3 sum = Vec3::Zero();
  for (const auto& p : points) sum += p.vec();
  const Vec3 o = sum.normalized();
  const auto [ou, ov] = tangent_basis(o);
  auto bearing = [&](const CircleArc& a) {
    const Vec3 mid = circle_point(a.circle, a.start + 0.5 * a.length).vec();
    return std::atan2(mid.dot(ov), mid.dot(ou));
  };
  std::sort(pieces.begin(), pieces.end(),
            [&](const CircleArc& a, const CircleArc& b) { return bearing(a) < bearing(b); });

  const std::size_t n = pieces.size();
  std::vector<SpherePoint> joints(n);
  for (std::size_t k = 0; k < n; ++k) {
    const CircleArc& cur = pieces[k];
    const CircleArc& next = pieces[(k + 1) % n];
    const SpherePoint end = circle_point(cur.circle, cur.start + cur.length);
    const SpherePoint start = circle_point(next.circle, next.start);
    if (geodesic_distance(end, start) > 1e-7) {
      throw GeometryError(ErrorKind::Degenerate, "ball intersection arcs do not chain");
    }
    joints[k] = SpherePoint(end.vec() + start.vec());
  }
  std::vector<Arc> arcs;
  arcs.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    arcs.push_back({points[pieces[k].circle], delta, joints[(k + n - 1) % n], joints[k]});
  }
  return Body(ArcBody(std::move(arcs)));
}

RandomReuleaux random_reuleaux(const ReuleauxSpec& spec) {
  validate(spec);
  if (!spec.seed) precondition("random_reuleaux needs a seed");
  const std::size_t n = static_cast<std::size_t>(spec.n);
  const std::size_t m = (n - 1) / 2;
  const double delta = spec.delta;
  const std::vector<SpherePoint> base = regular_reuleaux_vertices(spec);

  std::mt19937_64 rng(*spec.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::ostringstream log;

  // Walk the star cycle v_0, v_m, v_2m, ... whose consecutive members must sit
  // at distance delta, then close it with a two-circle solve.
  for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    std::vector<SpherePoint> chain(n);
    chain[0] = base[0];
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const Vec3 noise(unit(rng), unit(rng), unit(rng));
      const SpherePoint aim(base[(k * m) % n].vec() + spec.jitter * delta * noise);
      if (geodesic_distance(chain[k - 1], aim) < 1e-9) continue;
      chain[k] = walk(chain[k - 1], tangent_toward(chain[k - 1], aim), delta);
    }
    const SpherePoint& expected_last = base[((n - 1) * m) % n];
    const auto closing = small_circle_intersection(chain[n - 2], delta, chain[0], delta);
    if (closing.empty()) {
      log << "attempt " << attempt << ": chain does not close; ";
      continue;
    }
    chain[n - 1] = *std::min_element(closing.begin(), closing.end(), [&](const SpherePoint& a, const SpherePoint& b) {
      return geodesic_distance(a, expected_last) < geodesic_distance(b, expected_last);
    });

    std::vector<SpherePoint> vertices(n);
    for (std::size_t k = 0; k < n; ++k) vertices[(k * m) % n] = chain[k];

    try {
      const Body hull_of_disks = ball_intersection(vertices, delta);
      if (hull_of_disks.boundary().size() != n) {
        log << "attempt " << attempt << ": disk intersection has " << hull_of_disks.boundary().size() << " arcs; ";
        continue;
      }
      Body body = reuleaux_from_vertices(vertices, delta);
      const CheckReport cd = check_constant_diameter(body, 1e-6);
      if (!cd.verdict || std::abs(cd.target - delta) > 1e-6) {
        log << "attempt " << attempt << ": not of constant diameter delta; ";
        continue;
      }
      return {std::move(body), std::move(vertices), attempt};
    } catch (const GeometryError& e) {
      log << "attempt " << attempt << ": " << e.what() << "; ";
    }
  }
  throw GeometryError(ErrorKind::GenerationFailed, "no valid body after " + std::to_string(kMaxAttempts) +
                                                       " attempts: " + log.str());
}

Body lens(const SpherePoint& a, double delta, double heading) {
  const auto [u, v] = tangent_basis(a.vec());
  const SpherePoint b = walk(a, std::cos(heading) * u + std::sin(heading) * v, delta);
  const std::vector<SpherePoint> pts{a, b};
  return ball_intersection(pts, delta);
}

Body random_ball_intersection(std::uint64_t seed, int point_count, double delta) {
  if (point_count < 1) precondition("need at least one point");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double z = 2.0 * unit(rng) - 1.0;
  const double phi = kTwoPi * unit(rng);
  const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
  const SpherePoint center(rxy * std::cos(phi), rxy * std::sin(phi), z);
  const auto [u, v] = tangent_basis(center.vec());
  std::vector<SpherePoint> pts;
  for (int i = 0; i < point_count; ++i) {
    const double dist = 0.5 * delta * std::sqrt(unit(rng));
    const double ang = kTwoPi * unit(rng);
    pts.push_back(walk(center, std::cos(ang) * u + std::sin(ang) * v, dist));
  }
  return ball_intersection(pts, delta);
}

}  // namespace sphaera
