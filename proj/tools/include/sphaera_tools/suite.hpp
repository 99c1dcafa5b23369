#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <sphaera/convex_body.hpp>

namespace sphaera::tools {

struct NamedBody {
  std::string name;
  Body body;
};

/// Deterministic generator for item `index` of a run seeded with `seed`.
std::mt19937_64 item_rng(std::uint64_t seed, std::uint64_t index);

SpherePoint random_point(std::mt19937_64& rng);

Body octant();

/// Hull of 5-20 points scattered in a random cap of radius at most 0.7.
Body random_polygon(std::mt19937_64& rng);

/// Intersection of 2-7 disks of a random radius about nearby points.
Body random_arc_body(std::mt19937_64& rng);

std::vector<NamedBody> ball_family();
std::vector<NamedBody> regular_reuleaux_family();
std::vector<NamedBody> random_reuleaux_family(std::uint64_t seed, int count);

/// Balls, a spread of regular Reuleaux polygons and seeded random ones.
std::vector<NamedBody> constant_diameter_suite(std::uint64_t seed);

struct SearchItem {
  std::string kind;
  Body body;
};

/// Body `index` of a randomized search: random Reuleaux polygons, random
/// disk intersections and lenses in fixed proportion.
SearchItem search_body(std::uint64_t seed, std::uint64_t index);

struct LemmaStats {
  int trials = 0;
  double max_thickness_error = 0.0;
  /// Largest amount by which a sampled alternative lune undercut the minimum.
  double max_undercut = 0.0;
};

/// Random (K, p, q) with |pq| in (0.05, 1.5); each compared against
/// `alternatives` other lunes K cap M with q on bd(M).
LemmaStats lemma_trials(std::uint64_t seed, int trials, int alternatives = 360);

}  // namespace sphaera::tools
