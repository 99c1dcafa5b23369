#include "sphaera_tools/suite.hpp"

#include <cmath>
#include <string>

#include <sphaera/reuleaux.hpp>

namespace sphaera::tools {

namespace {

constexpr int kOddSizes[] = {3, 5, 7, 9};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

std::mt19937_64 item_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

SpherePoint random_point(std::mt19937_64& rng) {
  const double z = uniform(rng, -1.0, 1.0);
  const double phi = uniform(rng, 0.0, kTwoPi);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return SpherePoint(r * std::cos(phi), r * std::sin(phi), z);
}

Body octant() {
  return Body(SpherePolygon({SpherePoint(1, 0, 0), SpherePoint(0, 1, 0), SpherePoint(0, 0, 1)}));
}

Body random_polygon(std::mt19937_64& rng) {
  for (;;) {
    const SpherePoint c = random_point(rng);
    const auto [u, v] = tangent_basis(c.vec());
    const double cap = uniform(rng, 0.2, 0.7);
    const int count = uniform_int(rng, 5, 20);
    std::vector<SpherePoint> pts;
    for (int i = 0; i < count; ++i) {
      const double a = uniform(rng, 0.0, kTwoPi);
      const double s = cap * std::sqrt(uniform(rng, 0.0, 1.0));
      pts.push_back(walk(c, std::cos(a) * u + std::sin(a) * v, s));
    }
    try {
      return Body(convex_hull(pts));
    } catch (const GeometryError&) {
      // Near-collinear draw; take another.
    }
  }
}

Body random_arc_body(std::mt19937_64& rng) {
  const double delta = uniform(rng, 0.3, 1.4);
  const int count = uniform_int(rng, 2, 7);
  return random_ball_intersection(rng(), count, delta);
}

std::vector<NamedBody> ball_family() {
  std::vector<NamedBody> out;
  for (double rho : {0.15, 0.3, 0.45, 0.7}) {
    out.push_back({"ball rho=" + fmt(rho), ball(SpherePoint(0.3, -0.2, 1.0), rho)});
  }
  return out;
}

std::vector<NamedBody> regular_reuleaux_family() {
  std::vector<NamedBody> out;
  for (int n : kOddSizes) {
    for (double delta : {0.3, 0.6, 0.9, 1.2, 1.5}) {
      ReuleauxSpec spec;
      spec.n = n;
      spec.delta = delta;
      out.push_back({"reuleaux n=" + std::to_string(n) + " delta=" + fmt(delta), regular_reuleaux(spec)});
    }
  }
  return out;
}

std::vector<NamedBody> random_reuleaux_family(std::uint64_t seed, int count) {
  std::vector<NamedBody> out;
  for (int i = 0; i < count; ++i) {
    auto rng = item_rng(seed, static_cast<std::uint64_t>(i));
    ReuleauxSpec spec;
    spec.n = kOddSizes[i % 4];
    spec.delta = uniform(rng, 0.3, 1.4);
    spec.pose = rotation_about(random_point(rng).vec(), uniform(rng, 0.0, kTwoPi));
    spec.seed = rng();
    out.push_back({"random reuleaux n=" + std::to_string(spec.n) + " delta=" + fmt(spec.delta),
                   random_reuleaux(spec).body});
  }
  return out;
}

std::vector<NamedBody> constant_diameter_suite(std::uint64_t seed) {
  std::vector<NamedBody> out = ball_family();
  for (int n : kOddSizes) {
    for (double delta : {0.6, 1.2}) {
      ReuleauxSpec spec;
      spec.n = n;
      spec.delta = delta;
      spec.pose = rotation_about(Vec3(1, 2, 3), 0.4 * n);
      out.push_back({"reuleaux n=" + std::to_string(n) + " delta=" + fmt(delta), regular_reuleaux(spec)});
    }
  }
  for (auto& nb : random_reuleaux_family(seed, 4)) out.push_back(std::move(nb));
  return out;
}

SearchItem search_body(std::uint64_t seed, std::uint64_t index) {
  auto rng = item_rng(seed, index);
  switch (index % 5) {
    case 3:
      return {"ball_intersection", random_arc_body(rng)};
    case 4: {
      const SpherePoint a = random_point(rng);
      const double delta = uniform(rng, 0.2, 1.4);
      return {"lens", lens(a, delta, uniform(rng, 0.0, kTwoPi))};
    }
    default: {
      ReuleauxSpec spec;
      spec.n = kOddSizes[uniform_int(rng, 0, 3)];
      spec.delta = uniform(rng, 0.2, 1.45);
      spec.pose = rotation_about(random_point(rng).vec(), uniform(rng, 0.0, kTwoPi));
      spec.seed = rng();
      return {"random_reuleaux", random_reuleaux(spec).body};
    }
  }
}

LemmaStats lemma_trials(std::uint64_t seed, int trials, int alternatives) {
  LemmaStats stats;
  for (int t = 0; t < trials; ++t) {
    auto rng = item_rng(seed, static_cast<std::uint64_t>(t));
    const SpherePoint k = random_point(rng);
    const auto [u, v] = tangent_basis(k.vec());
    const double a = uniform(rng, 0.0, kTwoPi);
    const SpherePoint p(std::cos(a) * u + std::sin(a) * v);
    const double s = uniform(rng, 0.05, 1.5);
    const SpherePoint q(std::cos(s) * p.vec() + std::sin(s) * k.vec());
    const Hemisphere kh(k);
    const double pq = geodesic_distance(p, q);
    const double best = lune_thickness(narrowest_lune_through(kh, p, q));
    stats.max_thickness_error = std::max(stats.max_thickness_error, std::abs(best - pq));

    const auto [qa, qb] = tangent_basis(q.vec());
    const double phase = uniform(rng, 0.0, kTwoPi / alternatives);
    for (int j = 0; j < alternatives; ++j) {
      const double th = phase + kTwoPi * j / alternatives;
      const SpherePoint m(std::cos(th) * qa + std::sin(th) * qb);
      if (std::abs(m.dot(k)) >= 1.0 - 1e-12) continue;
      const double w = lune_thickness(Lune(kh, Hemisphere(m)));
      stats.max_undercut = std::max(stats.max_undercut, best - w);
    }
    ++stats.trials;
  }
  return stats;
}

}  // namespace sphaera::tools
