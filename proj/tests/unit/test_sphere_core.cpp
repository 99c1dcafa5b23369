#include <doctest.h>

#include <cmath>

#include <sphaera/sphere_core.hpp>

#include "oracles.hpp"

using namespace sphaera;

TEST_CASE("sphere point normalizes and rejects zero") {
  const SpherePoint p(3.0, 0.0, 4.0);
  CHECK(p.vec().norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.x() == doctest::Approx(0.6));
  CHECK_THROWS_AS(SpherePoint(0.0, 0.0, 0.0), GeometryError);
}

TEST_CASE("geodesic distance") {
  const SpherePoint e1(1, 0, 0);
  CHECK(geodesic_distance(e1, e1) == 0.0);
  CHECK(geodesic_distance(e1, SpherePoint(0, 1, 0)) == doctest::Approx(kHalfPi).epsilon(1e-15));
  CHECK(geodesic_distance(e1, SpherePoint(-1, 0, 0)) == doctest::Approx(kPi).epsilon(1e-15));
  // Tiny separations keep full relative precision.
  const SpherePoint near(1.0, 1e-9, 0.0);
  CHECK(geodesic_distance(e1, near) == doctest::Approx(1e-9).epsilon(1e-12));
}

TEST_CASE("hemisphere membership") {
  const Hemisphere h(SpherePoint(0, 0, 1));
  CHECK(h.contains(SpherePoint(0, 0, 1)));
  CHECK(h.contains(SpherePoint(1, 0, 0)));
  CHECK_FALSE(h.contains(SpherePoint(0, 0, -1)));
}

TEST_CASE("lune face centers lie on the opposite boundaries") {
  const Lune l{Hemisphere(SpherePoint(0, 0, 1)), Hemisphere(SpherePoint(1, 0, 0))};
  const auto [ug, uh] = lune_face_centers(l);
  CHECK((ug.vec() - Vec3(1, 0, 0)).norm() < 1e-15);
  CHECK((uh.vec() - Vec3(0, 0, 1)).norm() < 1e-15);

  const Vec3 h = rotation_about(Vec3::UnitY(), kPi / 3) * Vec3::UnitZ();
  const Lune tilted{Hemisphere(SpherePoint(0, 0, 1)), Hemisphere(SpherePoint(h))};
  const auto [a, b] = lune_face_centers(tilted);
  CHECK(std::abs(a.y()) < 1e-15);
  CHECK(std::abs(b.y()) < 1e-15);
  CHECK(std::abs(a.dot(SpherePoint(0, 0, 1))) < 1e-15);
  CHECK(std::abs(b.vec().dot(h)) < 1e-15);
}

TEST_CASE("lune thickness matches the face-center construction") {
  for (double d : {kHalfPi, kPi - 0.001, 2.0, 0.3}) {
    const SpherePoint g(0, 0, 1);
    const SpherePoint h(std::sin(d), 0.0, std::cos(d));
    const Lune l{Hemisphere(g), Hemisphere(h)};
    CHECK(lune_thickness(l) == doctest::Approx(kPi - d).epsilon(1e-13));
    CHECK(std::abs(lune_thickness_from_faces(l) - lune_thickness(l)) < 1e-12);
    CHECK(std::abs(oracle::face_center_thickness(g.vec(), h.vec()) - lune_thickness(l)) < 1e-12);
  }
  CHECK_THROWS_AS((Lune{Hemisphere(SpherePoint(0, 0, 1)), Hemisphere(SpherePoint(0, 0, -1))}), GeometryError);
}

TEST_CASE("narrowest lune through q") {
  const Hemisphere k(SpherePoint(0, 0, 1));
  const SpherePoint p(1, 0, 0);
  const SpherePoint q(std::cos(0.6), 0.0, std::sin(0.6));
  const Lune l = narrowest_lune_through(k, p, q);
  CHECK((l.h().center().vec() - Vec3(std::sin(0.6), 0.0, -std::cos(0.6))).norm() < 1e-14);
  CHECK(lune_thickness(l) == doctest::Approx(0.6).epsilon(1e-13));
  CHECK(p.dot(l.h().center()) == doctest::Approx(std::sin(0.6)));

  // No lune K cap M with q on bd(M) is thinner.
  const auto [a, b] = tangent_basis(q.vec());
  for (int j = 0; j < 360; ++j) {
    const double th = kTwoPi * (j + 0.5) / 360;
    const SpherePoint m(std::cos(th) * a + std::sin(th) * b);
    if (std::abs(m.dot(k.center())) >= 1.0 - 1e-12) continue;
    CHECK(lune_thickness(Lune(k, Hemisphere(m))) >= 0.6 - 1e-9);
  }

  const SpherePoint close(std::cos(1e-5), 0.0, std::sin(1e-5));
  CHECK(lune_thickness(narrowest_lune_through(k, p, close)) == doctest::Approx(1e-5).epsilon(1e-9));

  CHECK_THROWS_AS(narrowest_lune_through(k, SpherePoint(1, 0, 0.5), q), GeometryError);
  CHECK_THROWS_AS(narrowest_lune_through(k, p, SpherePoint(0, 1, 1)), GeometryError);
}

TEST_CASE("small circle intersection") {
  const SpherePoint a(0, 0, 1);
  const SpherePoint b(std::sin(1.0), 0.0, std::cos(1.0));
  const auto pts = small_circle_intersection(a, 1.0, b, 1.0);
  REQUIRE(pts.size() == 2);
  for (const auto& p : pts) {
    CHECK(geodesic_distance(p, a) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(geodesic_distance(p, b) == doctest::Approx(1.0).epsilon(1e-13));
  }
  CHECK(small_circle_intersection(a, 0.2, b, 0.2).empty());
}

TEST_CASE("walk and tangent helpers") {
  const SpherePoint a(0, 0, 1);
  const SpherePoint b(1, 1, 0.5);
  const Vec3 d = tangent_toward(a, b);
  const SpherePoint c = walk(a, d, geodesic_distance(a, b));
  CHECK((c.vec() - b.vec()).norm() < 1e-14);
  const auto [u, v] = tangent_basis(a.vec());
  CHECK(u.cross(v).dot(a.vec()) == doctest::Approx(1.0));
  CHECK(fibonacci_lattice(100).size() == 100);
}
