#include <doctest.h>

#include <cmath>

#include <sphaera/reuleaux.hpp>
#include <sphaera/width_diameter.hpp>

#include "oracles.hpp"

using namespace sphaera;

TEST_CASE("ball") {
  const SpherePoint c(0, 0, 1);
  const Body b = ball(c, 0.3);
  for (const auto& p : oracle::boundary_points(b, 100)) {
    CHECK(geodesic_distance(SpherePoint(p), c) == doctest::Approx(0.3).epsilon(1e-13));
  }
  CHECK_THROWS_AS(ball(c, 0.8), GeometryError);
  CHECK_THROWS_AS(ball(c, 0.0), GeometryError);
}

TEST_CASE("circumradius") {
  const double r = reuleaux_circumradius(3, 1.0);
  CHECK(r == doctest::Approx(std::asin(std::sqrt((1 - std::cos(1.0)) / (1 - std::cos(kTwoPi / 3))))).epsilon(1e-14));
  CHECK(r == doctest::Approx(0.5868).epsilon(1e-4));
  const double tiny = reuleaux_circumradius(3, 1e-3);
  CHECK(std::abs(tiny - 1e-3 / std::sqrt(3.0)) / (1e-3 / std::sqrt(3.0)) <= 1e-4);

  for (int n : {3, 5, 7, 9}) {
    ReuleauxSpec spec;
    spec.n = n;
    spec.delta = 1.2;
    const auto v = regular_reuleaux_vertices(spec);
    const int m = (n - 1) / 2;
    for (int i = 0; i < n; ++i) CHECK(std::abs(geodesic_distance(v[i], v[(i + m) % n]) - 1.2) <= 1e-12);
  }
}

TEST_CASE("parameter validation") {
  ReuleauxSpec spec;
  spec.n = 4;
  CHECK_THROWS_AS(validate(spec), GeometryError);
  spec.n = 3;
  spec.delta = kHalfPi;
  CHECK_THROWS_AS(validate(spec), GeometryError);
  spec.delta = 1.0;
  spec.pose = Mat3::Identity() * 2.0;
  CHECK_THROWS_AS(validate(spec), GeometryError);
}

TEST_CASE("regular Reuleaux pentagon") {
  ReuleauxSpec spec;
  spec.n = 5;
  spec.delta = 0.9;
  spec.pose = rotation_about(Vec3(1, -1, 2), 0.7);
  const Body p = regular_reuleaux(spec);
  const CheckReport cw = check_constant_width(p);
  const CheckReport cd = check_constant_diameter(p);
  CHECK(cw.verdict);
  CHECK(cd.verdict);
  CHECK(cw.target == doctest::Approx(0.9).epsilon(1e-6));
  CHECK(cd.target == doctest::Approx(0.9).epsilon(1e-6));
}

TEST_CASE("ball intersection") {
  ReuleauxSpec spec;
  const auto v = regular_reuleaux_vertices(spec);
  const Body bi = ball_intersection(v, 1.0);
  const Body reg = regular_reuleaux(spec);
  // Hausdorff distance between the boundaries, sampled.
  const auto a = oracle::boundary_points(bi, 400);
  const auto b = oracle::boundary_points(reg, 400);
  double haus = 0.0;
  for (const auto& p : a) {
    double best = kPi;
    for (const auto& q : b) best = std::min(best, geodesic_distance(SpherePoint(p), SpherePoint(q)));
    haus = std::max(haus, best);
  }
  CHECK(haus < 1e-2);  // sample spacing; vertices below are exact
  for (const auto& vert : v) {
    double best = kPi;
    for (const auto& j : bi.junctions()) best = std::min(best, geodesic_distance(vert, j));
    CHECK(best <= 1e-9);
  }

  const SpherePoint p(0.2, 0.3, 1.0);
  const Body single = ball_intersection(std::vector<SpherePoint>{p}, 0.5);
  REQUIRE(single.arc_body().arcs().size() == 1);
  CHECK(geodesic_distance(single.arc_body().arcs()[0].center, p) == 0.0);

  const std::vector<SpherePoint> far{SpherePoint(1, 0, 0), SpherePoint(0, 1, 0)};
  CHECK_THROWS_AS(ball_intersection(far, 1.0), GeometryError);
}

TEST_CASE("lens fails both checkers") {
  const Body l = lens(SpherePoint(0, 0, 1), 1.0, 0.3);
  CHECK(l.arc_body().arcs().size() == 2);
  CHECK(diameter(l).delta > 1.0);
  CHECK_FALSE(check_constant_width(l).verdict);
  CHECK_FALSE(check_constant_diameter(l).verdict);
}

TEST_CASE("random Reuleaux polygons") {
  ReuleauxSpec spec;
  spec.seed = 0;
  spec.jitter = 0.0;
  const RandomReuleaux flat = random_reuleaux(spec);
  const auto reg = regular_reuleaux_vertices(spec);
  for (std::size_t i = 0; i < reg.size(); ++i) CHECK(geodesic_distance(flat.vertices[i], reg[i]) < 1e-12);

  spec.n = 5;
  spec.delta = 0.8;
  spec.seed = 42;
  spec.jitter = 0.15;
  const RandomReuleaux r1 = random_reuleaux(spec);
  const RandomReuleaux r2 = random_reuleaux(spec);
  CHECK(check_constant_width(r1.body).verdict);
  const CheckReport cd = check_constant_diameter(r1.body);
  CHECK(cd.verdict);
  CHECK(cd.target == doctest::Approx(0.8).epsilon(1e-6));
  for (std::size_t i = 0; i < r1.vertices.size(); ++i) CHECK(r1.vertices[i].vec() == r2.vertices[i].vec());
  // Perturbed away from the regular polygon.
  double moved = 0.0;
  const auto base = regular_reuleaux_vertices(spec);
  for (std::size_t i = 0; i < base.size(); ++i) moved = std::max(moved, geodesic_distance(base[i], r1.vertices[i]));
  CHECK(moved > 1e-3);

  spec.seed.reset();
  CHECK_THROWS_AS(random_reuleaux(spec), GeometryError);
}
