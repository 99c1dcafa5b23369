#include "sphaera/width_diameter.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace sphaera {

namespace {

constexpr double kInvGolden = 0.6180339887498949;
constexpr std::size_t kRefinedExtrema = 8;
constexpr double kChordMergeDistance = 1e-6;

// Golden-section search for a maximum of f on [lo, hi].
std::pair<double, double> golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double a = lo;
  double b = hi;
  double c = b - kInvGolden * (b - a);
  double d = a + kInvGolden * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvGolden * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

// Indices of cyclic local maxima of values, best first, at most `limit` of them.
std::vector<std::size_t> top_local_maxima(const std::vector<double>& values, std::size_t limit) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = values[(i + n - 1) % n];
    const double next = values[(i + 1) % n];
    if (values[i] >= prev && values[i] >= next) idx.push_back(i);
  }
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  if (idx.size() > limit) idx.resize(limit);
  return idx;
}

// Refines the maximum of g over a piece chain, parametrized by arc length,
// around the given sample positions.
double refine_max_along(std::span<const BoundaryPiece> pieces, const std::vector<double>& positions,
                        const std::vector<double>& values, const std::function<double(const SpherePoint&)>& g,
                        double tol, SpherePoint* argmax) {
  const std::size_t n = positions.size();
  const double total = boundary_length(pieces);
  auto at = [&](double s) {
    const PieceLocus l = locus_at_length(pieces, s);
    return pieces[l.piece].point(l.t);
  };
  std::size_t best_i = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
  double best = values[best_i];
  if (argmax) *argmax = at(positions[best_i]);
  for (std::size_t i : top_local_maxima(values, kRefinedExtrema)) {
    double before = positions[i] - positions[(i + n - 1) % n];
    double after = positions[(i + 1) % n] - positions[i];
    if (before <= 0.0) before += total;
    if (after <= 0.0) after += total;
    if (n == 1) before = after = total / 2.0;
    const auto [s, v] = golden_max([&](double s) { return g(at(s)); }, positions[i] - before, positions[i] + after,
                                   tol);
    if (v > best) {
      best = v;
      if (argmax) *argmax = at(s);
    }
  }
  return best;
}

std::vector<double> sample_positions(std::span<const BoundaryPiece> pieces, const std::vector<PieceLocus>& loci) {
  std::vector<double> out;
  out.reserve(loci.size());
  for (const auto& l : loci) out.push_back(length_at_locus(pieces, l));
  return out;
}

double width_from_polar_min(double min_dot) noexcept { return kPi - clamped_acos(min_dot); }

void require_support(const Body& body, const SpherePoint& k) {
  if (std::abs(support_value(body, k)) > kEpsIncidence) {
    throw GeometryError(ErrorKind::NotSupporting, "H(k) is not a supporting hemisphere of the body");
  }
}

std::vector<DiametralChord> group_chords(std::vector<DiametralChord> raw) {
  std::vector<DiametralChord> out;
  auto near = [](const SpherePoint& a, const SpherePoint& b) {
    return geodesic_distance(a, b) <= kChordMergeDistance;
  };
  for (auto& c : raw) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const DiametralChord& o) {
      return (near(o.p, c.p) && near(o.q, c.q)) || (near(o.p, c.q) && near(o.q, c.p));
    });
    if (!dup) out.push_back(c);
  }
  // Each chord joins the family of its endpoint shared by the most chords,
  // so the chords pivoting about one point form one family.
  std::vector<SpherePoint> ends;
  auto end_id = [&](const SpherePoint& x) {
    for (std::size_t i = 0; i < ends.size(); ++i) {
      if (near(ends[i], x)) return i;
    }
    ends.push_back(x);
    return ends.size() - 1;
  };
  std::vector<std::pair<std::size_t, std::size_t>> ids;
  for (const auto& c : out) ids.emplace_back(end_id(c.p), end_id(c.q));
  std::vector<std::size_t> degree(ends.size(), 0);
  for (const auto& [a, b] : ids) {
    ++degree[a];
    ++degree[b];
  }
  std::vector<std::size_t> label(ends.size(), std::numeric_limits<std::size_t>::max());
  std::size_t next = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto [a, b] = ids[i];
    const std::size_t pivot = degree[a] > degree[b] || (degree[a] == degree[b] && a < b) ? a : b;
    if (label[pivot] == std::numeric_limits<std::size_t>::max()) label[pivot] = next++;
    out[i].family = label[pivot];
  }
  return out;
}

struct FarthestSweep {
  std::vector<BoundaryPoint> points;
  std::vector<double> positions;
  std::vector<double> distances;
  std::vector<SpherePoint> partners;
};

FarthestSweep farthest_sweep(const Body& body, std::size_t samples) {
  FarthestSweep sweep;
  sweep.points = boundary_sample(body, samples);
  std::vector<PieceLocus> loci;
  loci.reserve(sweep.points.size());
  for (const auto& bp : sweep.points) {
    const auto [d, q] = farthest_point(body, bp.point);
    sweep.distances.push_back(d);
    sweep.partners.push_back(q);
    loci.push_back(bp.locus);
  }
  sweep.positions = sample_positions(body.boundary(), loci);
  return sweep;
}

double diameter_of(const Body& body, const FarthestSweep& sweep, const SweepOptions& opts) {
  double delta = refine_max_along(
      body.boundary(), sweep.positions, sweep.distances,
      [&](const SpherePoint& x) { return farthest_distance(body, x); }, opts.refine_tol, nullptr);
  if (body.is_polygon()) {
    const auto& v = body.polygon().vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) delta = std::max(delta, geodesic_distance(v[i], v[j]));
    }
  }
  return delta;
}

std::vector<DiametralChord> chords_from_sweep(const FarthestSweep& sweep, double delta, double tol) {
  std::vector<DiametralChord> raw;
  for (std::size_t i = 0; i < sweep.points.size(); ++i) {
    if (sweep.distances[i] >= delta - tol) {
      raw.push_back({sweep.points[i].point, sweep.partners[i], sweep.distances[i], 0});
    }
  }
  return group_chords(std::move(raw));
}

}  // namespace

DiameterResult diameter(const Body& body, const SweepOptions& opts) {
  const FarthestSweep sweep = farthest_sweep(body, opts.samples);
  DiameterResult out;
  out.delta = diameter_of(body, sweep, opts);
  out.chords = chords_from_sweep(sweep, out.delta, kDefaultChordTolerance);
  return out;
}

std::vector<DiametralChord> diametral_chords(const Body& body, double tol, const SweepOptions& opts) {
  if (!(tol > 0.0)) throw GeometryError(ErrorKind::PrecondViolation, "chord tolerance must be positive");
  const FarthestSweep sweep = farthest_sweep(body, opts.samples);
  return chords_from_sweep(sweep, diameter_of(body, sweep, opts), tol);
}

std::pair<double, SpherePoint> farthest_point(const Body& body, const SpherePoint& p) noexcept {
  const auto pieces = body.boundary();
  const BoundaryMin m = boundary_min_dot(pieces, p.vec());
  const SpherePoint q = pieces[m.at.piece].point(m.at.t);
  return {geodesic_distance(p, q), q};
}

double farthest_distance(const Body& body, const SpherePoint& p) noexcept { return farthest_point(body, p).first; }

double width_given_support(const Body& body, const SpherePoint& k) {
  require_support(body, k);
  return width_from_polar_min(boundary_min_dot(body.polar_boundary(), k.vec()).value);
}

Lune narrowest_lune_containing(const Body& body, const SpherePoint& k) {
  require_support(body, k);
  const auto pieces = body.polar_boundary();
  const BoundaryMin m = boundary_min_dot(pieces, k.vec());
  return Lune(Hemisphere(k), Hemisphere(pieces[m.at.piece].point(m.at.t)));
}

double width_oracle(const Body& body, const SpherePoint& k, std::size_t grid_size) {
  if (grid_size < 1000) throw GeometryError(ErrorKind::PrecondViolation, "oracle grid must have at least 1000 directions");
  require_support(body, k);
  const auto pieces = body.boundary();
  const auto [ua, ub] = tangent_basis(k.vec());
  // Containment in H(k') is judged with the same rounding slack that H(k)
  // itself needs, so k' = k (thickness pi) is always feasible.
  const double slack = std::max(0.0, -boundary_min_dot(pieces, k.vec()).value) + 1e-15;

  std::size_t stride = static_cast<std::size_t>(std::llround(kInvGolden * static_cast<double>(grid_size)));
  while (std::gcd(stride, grid_size) != 1) ++stride;

  double best = kPi;
  for (std::size_t i = 0; i < grid_size; ++i) {
    const std::size_t j = (i * stride) % grid_size;
    const double theta = kTwoPi * (static_cast<double>(j) / static_cast<double>(grid_size));
    const Vec3 d = std::cos(theta) * ua + std::sin(theta) * ub;
    // k'(s) lies at distance s from -k toward d; the lune H(k) cap H(k'(s)) has thickness s.
    auto feasible = [&](double s) {
      const Vec3 kp = -std::cos(s) * k.vec() + std::sin(s) * d;
      return boundary_min_dot(pieces, kp).value >= -slack;
    };
    if (!feasible(best)) continue;
    double lo = 0.0;
    double hi = best;
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      (feasible(mid) ? hi : lo) = mid;
    }
    best = hi;
  }
  return best;
}

ThicknessResult thickness(const Body& body, const SweepOptions& opts) {
  const auto pieces = body.polar_boundary();
  const auto loci = sample_loci(pieces, opts.samples);
  std::vector<double> neg_widths;
  neg_widths.reserve(loci.size());
  auto neg_width = [&](const SpherePoint& k) {
    return -width_from_polar_min(boundary_min_dot(pieces, k.vec()).value);
  };
  for (const auto& l : loci) neg_widths.push_back(neg_width(pieces[l.piece].point(l.t)));
  ThicknessResult out;
  out.value = -refine_max_along(pieces, sample_positions(pieces, loci), neg_widths, neg_width, opts.refine_tol, &out.k);
  return out;
}

CheckReport check_constant_width(const Body& body, double tol, const SweepOptions& opts, std::optional<double> target) {
  if (!(tol > 0.0)) throw GeometryError(ErrorKind::PrecondViolation, "tolerance must be positive");
  const auto pieces = body.polar_boundary();
  CheckReport report;
  report.check = "constant-width";
  report.tolerance = tol;
  std::size_t lo_i = 0;
  std::size_t hi_i = 0;
  for (const auto& l : sample_loci(pieces, opts.samples)) {
    const SpherePoint k = pieces[l.piece].point(l.t);
    const double w = width_from_polar_min(boundary_min_dot(pieces, k.vec()).value);
    report.profile.push_back({k, w});
    if (w < report.profile[lo_i].value) lo_i = report.profile.size() - 1;
    if (w > report.profile[hi_i].value) hi_i = report.profile.size() - 1;
  }
  report.observed_min = report.profile[lo_i].value;
  report.observed_max = report.profile[hi_i].value;
  report.target = target.value_or(report.observed_min);
  report.verdict = range_verdict(report.target, report.observed_min, report.observed_max, tol);
  report.witnesses = {{"min-width-support", {report.profile[lo_i].at}, report.observed_min},
                      {"max-width-support", {report.profile[hi_i].at}, report.observed_max}};
  return report;
}

CheckReport check_constant_diameter(const Body& body, double tol, const SweepOptions& opts) {
  if (!(tol > 0.0)) throw GeometryError(ErrorKind::PrecondViolation, "tolerance must be positive");
  const FarthestSweep sweep = farthest_sweep(body, opts.samples);
  const double delta = diameter_of(body, sweep, opts);
  CheckReport report;
  report.check = "constant-diameter";
  report.tolerance = tol;
  report.target = delta;
  std::size_t lo_i = 0;
  std::size_t hi_i = 0;
  for (std::size_t i = 0; i < sweep.points.size(); ++i) {
    report.profile.push_back({sweep.points[i].point, sweep.distances[i]});
    if (sweep.distances[i] < sweep.distances[lo_i]) lo_i = i;
    if (sweep.distances[i] > sweep.distances[hi_i]) hi_i = i;
  }
  report.observed_min = sweep.distances[lo_i];
  report.observed_max = sweep.distances[hi_i];
  report.verdict = range_verdict(delta, report.observed_min, report.observed_max, tol);
  report.witnesses = {
      {"least-farthest-partner", {sweep.points[lo_i].point, sweep.partners[lo_i]}, report.observed_min},
      {"diametral-pair", {sweep.points[hi_i].point, sweep.partners[hi_i]}, report.observed_max}};
  return report;
}

bool chords_intersect(const DiametralChord& a, const DiametralChord& b, double tol) {
  const GeodesicArc arc_a(a.p, a.q);
  const GeodesicArc arc_b(b.p, b.q);
  if (arc_a.distance_to(b.p) <= tol || arc_a.distance_to(b.q) <= tol || arc_b.distance_to(a.p) <= tol ||
      arc_b.distance_to(a.q) <= tol) {
    return true;
  }
  const Vec3 meet = a.p.vec().cross(a.q.vec()).normalized().cross(b.p.vec().cross(b.q.vec()).normalized());
  if (meet.norm() < 1e-15) return false;
  for (const Vec3& m : {meet, Vec3(-meet)}) {
    const SpherePoint x(m);
    if (arc_a.distance_to(x) <= tol && arc_b.distance_to(x) <= tol) return true;
  }
  return false;
}

CheckReport check_chord_intersections(const Body& body, std::size_t chord_count, double cd_tol,
                                      const SweepOptions& opts) {
  const CheckReport cd = check_constant_diameter(body, cd_tol, opts);
  if (!cd.verdict) {
    throw GeometryError(ErrorKind::NotConstantDiameter, "chord intersection check needs a body of constant diameter");
  }
  std::vector<DiametralChord> chords;
  for (const auto& bp : boundary_sample(body, chord_count)) {
    const auto [d, q] = farthest_point(body, bp.point);
    chords.push_back({bp.point, q, d, 0});
  }
  CheckReport report;
  report.check = "diametral-chords-intersect";
  report.tolerance = 0.0;
  report.target = 0.0;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < chords.size(); ++i) {
    for (std::size_t j = i + 1; j < chords.size(); ++j) {
      if (chords_intersect(chords[i], chords[j])) continue;
      if (failures++ == 0) {
        report.witnesses.push_back({"disjoint-chords", {chords[i].p, chords[i].q, chords[j].p, chords[j].q}, 0.0});
      }
    }
  }
  report.observed_min = report.observed_max = static_cast<double>(failures);
  report.verdict = failures == 0;
  return report;
}

SupportChordMap::SupportChordMap(const Body& body, double tol, const SweepOptions& opts) : body_(&body) {
  const CheckReport cd = check_constant_diameter(body, tol, opts);
  if (!cd.verdict) {
    throw GeometryError(ErrorKind::NotConstantDiameter, "support/chord correspondence needs constant diameter");
  }
  delta_ = cd.target;
  if (delta_ >= kHalfPi) {
    throw GeometryError(ErrorKind::NotConstantDiameter, "support/chord correspondence needs diameter below pi/2");
  }
}

DiametralChord SupportChordMap::chord_for(const SpherePoint& r) const {
  if (std::abs(support_value(*body_, r)) > kEpsIncidence) {
    throw GeometryError(ErrorKind::NotOnPolarBoundary, "r is not on the boundary of the polar body");
  }
  const TouchResult touch = touch_point(*body_, r);
  const SpherePoint& p = touch.point.point;
  const auto exit = geodesic_exit(*body_, p, r.vec());
  if (!exit) throw GeometryError(ErrorKind::BadConfiguration, "geodesic through the touch point leaves no chord");
  return {p, exit->point, geodesic_distance(p, exit->point), 0};
}

DiametralChord support_chord_correspondence(const Body& body, const SpherePoint& r, double tol) {
  return SupportChordMap(body, tol).chord_for(r);
}

double chord_orthogonality_residual(const DiametralChord& chord, const SpherePoint& r) {
  const Vec3 along = tangent_toward(chord.p, chord.q);
  const Vec3 normal = tangent_toward(chord.p, r);
  return std::atan2(along.cross(normal).norm(), along.dot(normal));
}

}  // namespace sphaera
