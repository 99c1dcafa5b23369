#include "sphaera/sphere_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sphaera {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DegenerateLune: return "DegenerateLune";
    case ErrorKind::BadConfiguration: return "BadConfiguration";
    case ErrorKind::NoHemisphere: return "NoHemisphere";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NotOnBoundary: return "NotOnBoundary";
    case ErrorKind::NotSupporting: return "NotSupporting";
    case ErrorKind::EmptyInterior: return "EmptyInterior";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::PrecondViolation: return "PrecondViolation";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::NotConstantDiameter: return "NotConstantDiameter";
    case ErrorKind::NotOnPolarBoundary: return "NotOnPolarBoundary";
    case ErrorKind::InvalidBody: return "InvalidBody";
  }
  return "Unknown";
}

double clamped_acos(double cosine) noexcept { return std::acos(std::clamp(cosine, -1.0, 1.0)); }

double wrap_two_pi(double angle) noexcept {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

double wrap_pi(double angle) noexcept {
  double a = wrap_two_pi(angle);
  return a > kPi ? a - kTwoPi : a;
}

SpherePoint::SpherePoint(const Vec3& v) {
  const double n = v.norm();
  if (!std::isfinite(n) || n < 1e-300) {
    throw GeometryError(ErrorKind::Degenerate, "cannot place a zero or non-finite vector on the sphere");
  }
  v_ = v / n;
}

double geodesic_distance(const SpherePoint& a, const SpherePoint& b) noexcept {
  // atan2 form keeps full precision for nearly coincident and nearly antipodal points.
  return std::atan2(a.vec().cross(b.vec()).norm(), a.vec().dot(b.vec()));
}

Vec3 tangent_toward(const SpherePoint& from, const SpherePoint& to) {
  Vec3 t = to.vec() - to.dot(from) * from.vec();
  const double n = t.norm();
  if (n < 1e-15) {
    throw GeometryError(ErrorKind::BadConfiguration, "tangent direction undefined for coincident or antipodal points");
  }
  return t / n;
}

SpherePoint walk(const SpherePoint& from, const Vec3& dir, double s) noexcept {
  return SpherePoint::from_unit((std::cos(s) * from.vec() + std::sin(s) * dir).normalized());
}

std::pair<Vec3, Vec3> tangent_basis(const Vec3& n) noexcept {
  // Pick the coordinate axis least aligned with n as a seed.
  Vec3 seed = Vec3::UnitX();
  if (std::abs(n.y()) < std::abs(n.x()) && std::abs(n.y()) <= std::abs(n.z())) {
    seed = Vec3::UnitY();
  } else if (std::abs(n.z()) < std::abs(n.x()) && std::abs(n.z()) < std::abs(n.y())) {
    seed = Vec3::UnitZ();
  }
  Vec3 u = (seed - seed.dot(n) * n).normalized();
  Vec3 v = n.cross(u);
  return {u, v};
}

std::vector<SpherePoint> small_circle_intersection(const SpherePoint& a, double ra,
                                                   const SpherePoint& b, double rb) {
  const double g = a.dot(b);
  const double det = 1.0 - g * g;
  if (det < 1e-24) return {};
  const double ca = std::cos(ra);
  const double cb = std::cos(rb);
  const double alpha = (ca - g * cb) / det;
  const double beta = (cb - g * ca) / det;
  const Vec3 base = alpha * a.vec() + beta * b.vec();
  const Vec3 axis = a.vec().cross(b.vec());
  const double rem = 1.0 - base.squaredNorm();
  if (rem < -1e-15) return {};
  if (rem <= 1e-30) return {SpherePoint(base)};
  const double gamma = std::sqrt(rem) / axis.norm();
  return {SpherePoint(base + gamma * axis), SpherePoint(base - gamma * axis)};
}

std::vector<SpherePoint> fibonacci_lattice(std::size_t n) {
  std::vector<SpherePoint> out;
  out.reserve(n);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    out.push_back(SpherePoint::from_unit(Vec3(r * std::cos(phi), r * std::sin(phi), z)));
  }
  return out;
}

GeodesicArc::GeodesicArc(const SpherePoint& a, const SpherePoint& b) : a_(a), b_(b) {
  if (a.dot(b) <= -1.0 + kEpsUnit) {
    throw GeometryError(ErrorKind::Degenerate, "arc endpoints are antipodal");
  }
}

SpherePoint GeodesicArc::at(double f) const {
  const double len = length();
  if (len < 1e-15) return a_;
  return walk(a_, tangent_toward(a_, b_), f * len);
}

double GeodesicArc::distance_to(const SpherePoint& p) const {
  const double end_dist = std::min(geodesic_distance(p, a_), geodesic_distance(p, b_));
  const Vec3 axis = a_.vec().cross(b_.vec());
  if (axis.norm() < 1e-15) return end_dist;
  const Vec3 n = axis.normalized();
  const Vec3 foot = p.vec() - p.dot(n) * n;
  if (foot.norm() < 1e-15) return end_dist;
  const Vec3 f = foot.normalized();
  if (a_.vec().cross(f).dot(n) >= 0.0 && f.cross(b_.vec()).dot(n) >= 0.0) {
    return std::asin(std::min(1.0, std::abs(p.dot(n))));
  }
  return end_dist;
}

bool hemisphere_contains(const Hemisphere& h, const SpherePoint& p, double eps) noexcept {
  return h.contains(p, eps);
}

Lune::Lune(const Hemisphere& g, const Hemisphere& h) : g_(g), h_(h) {
  if (std::abs(g.center().dot(h.center())) >= 1.0 - kEpsUnit) {
    throw GeometryError(ErrorKind::DegenerateLune, "hemispheres of a lune must be distinct and not opposite");
  }
}

std::pair<SpherePoint, SpherePoint> lune_face_centers(const Lune& lune) {
  const Vec3& g = lune.g().center().vec();
  const Vec3& h = lune.h().center().vec();
  const double gh = g.dot(h);
  return {SpherePoint(h - gh * g), SpherePoint(g - gh * h)};
}

double lune_thickness(const Lune& lune) noexcept {
  return kPi - geodesic_distance(lune.g().center(), lune.h().center());
}

double lune_thickness_from_faces(const Lune& lune) {
  const auto [ug, uh] = lune_face_centers(lune);
  return geodesic_distance(ug, uh);
}

Lune narrowest_lune_through(const Hemisphere& k, const SpherePoint& p, const SpherePoint& q) {
  const SpherePoint& c = k.center();
  if (std::abs(p.dot(c)) > kEpsIncidence) {
    throw GeometryError(ErrorKind::BadConfiguration, "p is not on the boundary of K");
  }
  if (q.dot(c) <= 0.0) {
    throw GeometryError(ErrorKind::BadConfiguration, "q is not interior to K");
  }
  if (q.dot(p) <= 0.0) {
    throw GeometryError(ErrorKind::BadConfiguration, "|pq| must be below pi/2");
  }
  const Vec3 plane = p.vec().cross(c.vec()).normalized();
  if (std::abs(q.dot(plane)) > kEpsIncidence) {
    throw GeometryError(ErrorKind::BadConfiguration, "q is not on the arc from p orthogonal to bd(K)");
  }
  if (geodesic_distance(p, q) < kEpsUnit) {
    throw GeometryError(ErrorKind::BadConfiguration, "p and q coincide");
  }
  // The centre of K_perp is q moved a quarter turn toward p along the p-q great circle.
  const SpherePoint m = SpherePoint::from_unit(tangent_toward(q, p));
  return Lune(k, Hemisphere(m));
}

Mat3 rotation_about(const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

}  // namespace sphaera
