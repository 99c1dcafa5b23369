#include "sphaera/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sphaera {

BoundaryPiece::BoundaryPiece(const SpherePoint& center, double radius, const SpherePoint& start, double span)
    : center_(center), radius_(radius), span_(span) {
  if (!(radius > 0.0) || radius > kHalfPi + kEpsUnit) {
    throw GeometryError(ErrorKind::InvalidBody, "arc radius must lie in (0, pi/2]");
  }
  if (!(span > 0.0) || span > kTwoPi + kEpsUnit) {
    throw GeometryError(ErrorKind::InvalidBody, "arc angular span must lie in (0, 2 pi]");
  }
  if (radius >= kHalfPi) {
    radius_ = kHalfPi;
    cos_r_ = 0.0;
    sin_r_ = 1.0;
  } else {
    cos_r_ = std::cos(radius);
    sin_r_ = std::sin(radius);
  }
  span_ = std::min(span, kTwoPi);
  const Vec3& c = center_.vec();
  const Vec3 radial = start.vec() - start.dot(c) * c;
  if (radial.norm() < 1e-15) {
    throw GeometryError(ErrorKind::InvalidBody, "arc start coincides with its center");
  }
  e1_ = radial.normalized();
  e2_ = c.cross(e1_);
}

BoundaryPiece BoundaryPiece::from_endpoints(const SpherePoint& center, double radius, const SpherePoint& start,
                                            const SpherePoint& end, bool full_circle) {
  BoundaryPiece probe(center, radius, start, kTwoPi);
  double span = probe.parameter_of(end.vec());
  if (full_circle && (span < kEpsUnit || span > kTwoPi - kEpsUnit)) span = kTwoPi;
  if (span < 1e-15) {
    throw GeometryError(ErrorKind::InvalidBody, "arc has zero length");
  }
  return BoundaryPiece(center, radius, start, span);
}

SpherePoint BoundaryPiece::point(double t) const noexcept {
  const Vec3 x = cos_r_ * center_.vec() + sin_r_ * (std::cos(t) * e1_ + std::sin(t) * e2_);
  return SpherePoint::from_unit(x.normalized());
}

Vec3 BoundaryPiece::tangent(double t) const noexcept { return -std::sin(t) * e1_ + std::cos(t) * e2_; }

SpherePoint BoundaryPiece::normal_center(double t) const noexcept {
  const Vec3 u = std::cos(t) * e1_ + std::sin(t) * e2_;
  return SpherePoint::from_unit((sin_r_ * center_.vec() - cos_r_ * u).normalized());
}

double BoundaryPiece::parameter_of(const Vec3& x) const noexcept {
  return wrap_two_pi(std::atan2(x.dot(e2_), x.dot(e1_)));
}

std::pair<double, double> BoundaryPiece::min_dot(const Vec3& dir) const noexcept {
  const double a = e1_.dot(dir);
  const double b = e2_.dot(dir);
  const double base = cos_r_ * center_.vec().dot(dir);
  auto f = [&](double t) { return base + sin_r_ * (a * std::cos(t) + b * std::sin(t)); };

  double best_t = 0.0;
  double best = f(0.0);
  const double end_val = f(span_);
  if (end_val < best) {
    best = end_val;
    best_t = span_;
  }
  const double t_star = wrap_two_pi(std::atan2(-b, -a));
  if (t_star <= span_) {
    const double v = base - sin_r_ * std::hypot(a, b);
    if (v < best) {
      best = v;
      best_t = t_star;
    }
  }
  return {best, best_t};
}

BoundaryPiece BoundaryPiece::sub_piece(double t0, double t1) const {
  return BoundaryPiece(center_, radius_, point(t0), t1 - t0);
}

BoundaryMin boundary_min_dot(std::span<const BoundaryPiece> pieces, const Vec3& dir) noexcept {
  BoundaryMin out;
  out.value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto [v, t] = pieces[i].min_dot(dir);
    if (v < out.value) {
      out.value = v;
      out.at = {i, t};
    }
  }
  return out;
}

double junction_turn(std::span<const BoundaryPiece> pieces, std::size_t i) {
  const BoundaryPiece& cur = pieces[i];
  const BoundaryPiece& next = pieces[(i + 1) % pieces.size()];
  const Vec3 v = cur.end().vec();
  const Vec3 k_end = cur.normal_center(cur.span()).vec();
  const Vec3 k_start = next.normal_center(0.0).vec();
  const Vec3 e1 = (k_end - k_end.dot(v) * v).normalized();
  const Vec3 e2 = v.cross(e1);
  return std::atan2(k_start.dot(e2), k_start.dot(e1));
}

std::vector<BoundaryPiece> polar_pieces(std::span<const BoundaryPiece> pieces) {
  std::vector<BoundaryPiece> out;
  out.reserve(2 * pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const BoundaryPiece& p = pieces[i];
    if (!p.is_geodesic()) {
      out.emplace_back(p.center(), kHalfPi - p.radius(), p.normal_center(0.0), p.span());
    }
    if (pieces.size() == 1 && p.is_full_circle()) continue;
    const double turn = junction_turn(pieces, i);
    if (turn > kEpsUnit) {
      out.emplace_back(p.end(), kHalfPi, p.normal_center(p.span()), turn);
    }
  }
  return out;
}

double boundary_length(std::span<const BoundaryPiece> pieces) noexcept {
  double total = 0.0;
  for (const auto& p : pieces) total += p.length();
  return total;
}

PieceLocus locus_at_length(std::span<const BoundaryPiece> pieces, double s) noexcept {
  const double total = boundary_length(pieces);
  if (total <= 0.0) return {};
  s = std::fmod(s, total);
  if (s < 0.0) s += total;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const double len = pieces[i].length();
    if (s <= len || i + 1 == pieces.size()) {
      const double sin_r = len / pieces[i].span();
      return {i, std::clamp(s / sin_r, 0.0, pieces[i].span())};
    }
    s -= len;
  }
  return {};
}

double length_at_locus(std::span<const BoundaryPiece> pieces, const PieceLocus& at) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < at.piece && i < pieces.size(); ++i) s += pieces[i].length();
  const BoundaryPiece& p = pieces[at.piece];
  return s + at.t * (p.length() / p.span());
}

}  // namespace sphaera
