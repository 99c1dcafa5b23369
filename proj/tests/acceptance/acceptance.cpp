// Acceptance matrix: one PASS/FAIL line per criterion, with the measured
// figures and wall time. Exit status is nonzero on any failure that is not
// listed as a known conflict.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <sphaera/reuleaux.hpp>
#include <sphaera/width_diameter.hpp>
#include <sphaera_tools/cli.hpp>
#include <sphaera_tools/suite.hpp>

#include "oracles.hpp"

using namespace sphaera;
using namespace sphaera::tools;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  // Set when the failure is a documented disagreement with the criterion
  // itself rather than with the implementation.
  std::string known_conflict;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

Outcome c1_lune_thickness() {
  double worst = 0.0;
  int built = 0;
  for (std::uint64_t i = 0; built < 10000; ++i) {
    auto rng = item_rng(101, i);
    const SpherePoint g = random_point(rng);
    const SpherePoint h = random_point(rng);
    if (std::abs(g.dot(h)) >= 1.0 - 1e-12) continue;
    const Lune lune{Hemisphere(g), Hemisphere(h)};
    const double faces = oracle::face_center_thickness(g.vec(), h.vec());
    worst = std::max(worst, std::abs(faces - lune_thickness(lune)));
    worst = std::max(worst, std::abs(lune_thickness_from_faces(lune) - lune_thickness(lune)));
    ++built;
  }
  return {worst <= 1e-12, "10000 lunes, max deviation " + sci(worst)};
}

Outcome c2_lemma() {
  const LemmaStats s = lemma_trials(202, 1000, 360);
  return {s.max_thickness_error <= 1e-12 && s.max_undercut <= 1e-9,
          std::to_string(s.trials) + " triples, max | thickness - |pq| | " + sci(s.max_thickness_error) +
              ", max undercut by alternatives " + sci(s.max_undercut)};
}

Outcome c3_balls() {
  const double rhos[] = {0.15, 0.3, 0.45, 0.7};
  const auto balls = ball_family();
  double worst = 0.0;
  bool ok = true;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const CheckReport cw = check_constant_width(balls[i].body, 1e-9);
    const CheckReport cd = check_constant_diameter(balls[i].body, 1e-9);
    ok = ok && cw.verdict && cd.verdict;
    worst = std::max({worst, std::abs(cw.target - 2 * rhos[i]), std::abs(cd.target - 2 * rhos[i])});
  }
  return {ok && worst <= 1e-9, "4 balls, max |target - 2 rho| " + sci(worst)};
}

Outcome c4_regular_reuleaux() {
  const double deltas[] = {0.3, 0.6, 0.9, 1.2, 1.5};
  const auto family = regular_reuleaux_family();
  bool ok = true;
  double worst_target = 0.0;
  double worst_profile = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double delta = deltas[i % 5];
    const CheckReport cw = check_constant_width(family[i].body, 1e-6);
    const CheckReport cd = check_constant_diameter(family[i].body, 1e-6);
    ok = ok && cw.verdict && cd.verdict;
    worst_target = std::max({worst_target, std::abs(cw.target - delta), std::abs(cd.target - delta)});
    for (const auto& s : cw.profile) worst_profile = std::max(worst_profile, std::abs(s.value - delta));
  }
  return {ok && worst_target <= 1e-6 && worst_profile <= 1e-6,
          std::to_string(family.size()) + " polygons, max |target - delta| " + sci(worst_target) +
              ", max width-profile deviation " + sci(worst_profile)};
}

Outcome c5_randomized() {
  int disagreements = 0;
  int lenses = 0;
  int lens_escapes = 0;
  int constant = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const SearchItem item = search_body(505, i);
    const bool cd = check_constant_diameter(item.body, 1e-5).verdict;
    const bool cw = check_constant_width(item.body, 1e-5).verdict;
    disagreements += cd != cw;
    constant += cd && cw;
    if (item.kind == "lens") {
      ++lenses;
      lens_escapes += cd || cw;
    }
  }
  return {disagreements == 0 && lens_escapes == 0,
          "500 bodies (" + std::to_string(constant) + " constant), " + std::to_string(disagreements) +
              " disagreements, " + std::to_string(lenses - lens_escapes) + "/" + std::to_string(lenses) +
              " lenses fail both"};
}

Outcome c6_strict_convexity() {
  const auto suite = constant_diameter_suite(606);
  int strict = 0;
  for (const auto& nb : suite) strict += is_strictly_convex(nb.body).verdict;
  int rejected = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto rng = item_rng(607, i);
    const CheckReport r = check_constant_diameter(random_polygon(rng));
    rejected += !r.verdict && !r.witnesses.empty();
  }
  const CheckReport oct = check_constant_diameter(octant());
  const bool octant_rejected = !oct.verdict && !oct.witnesses.empty();
  const bool rest = strict == static_cast<int>(suite.size()) && rejected == 50;
  Outcome o{rest && octant_rejected,
            std::to_string(strict) + "/" + std::to_string(suite.size()) + " strictly convex, " +
                std::to_string(rejected) + "/50 random hulls rejected, octant " +
                (octant_rejected ? "rejected" : "accepted (farthest-distance range " + sci(oct.observed_min) + ".." +
                                                    sci(oct.observed_max) + ")")};
  if (rest && !octant_rejected) {
    o.known_conflict = "the octant has constant diameter pi/2, outside the delta < pi/2 scope";
  }
  return o;
}

Outcome c7_chords() {
  const auto suite = constant_diameter_suite(707);
  int ok = 0;
  for (const auto& nb : suite) ok += check_chord_intersections(nb.body, 200, 1e-6).verdict;
  return {ok == static_cast<int>(suite.size()),
          std::to_string(ok) + "/" + std::to_string(suite.size()) + " bodies, 200 chords each pairwise intersect"};
}

Outcome c8_correspondence() {
  const auto suite = constant_diameter_suite(808);
  double worst_len = 0.0;
  double worst_orth = 0.0;
  int non_unique = 0;
  for (const auto& nb : suite) {
    const SupportChordMap map(nb.body);
    for (const auto& r : polar_boundary_sample(nb.body, 100)) {
      non_unique += !touch_point(nb.body, r).unique;
      const DiametralChord c = map.chord_for(r);
      worst_len = std::max(worst_len, std::abs(c.length - map.delta()));
      worst_orth = std::max(worst_orth, chord_orthogonality_residual(c, r));
    }
  }
  return {non_unique == 0 && worst_len <= 1e-6 && worst_orth <= 1e-6,
          std::to_string(suite.size()) + " bodies x 100 supports, " + std::to_string(non_unique) +
              " non-unique touches, max |chord - delta| " + sci(worst_len) + ", max orthogonality residual " +
              sci(worst_orth)};
}

Outcome c9_width_reduction() {
  double worst_gap = 0.0;
  double worst_excess = -1.0;
  int pairs = 0;
  for (std::uint64_t i = 0; i < 120; ++i) {
    auto rng = item_rng(909, i);
    const Body body = i < 100 ? random_polygon(rng) : random_arc_body(rng);
    for (const auto& k : polar_boundary_sample(body, 50)) {
      const double closed = width_given_support(body, k);
      const double brute = width_oracle(body, k, 10000);
      worst_gap = std::max(worst_gap, std::abs(closed - brute));
      worst_excess = std::max(worst_excess, closed - brute);
      ++pairs;
    }
  }
  return {worst_gap <= 2e-3 && worst_excess <= 1e-9,
          std::to_string(pairs) + " (body, support) pairs, max |closed - oracle| " + sci(worst_gap) +
              ", max closed - oracle " + sci(worst_excess)};
}

double vertex_set_distance(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b) {
  if (a.size() != b.size()) return kPi;
  double worst = 0.0;
  for (const auto& p : a) {
    double best = kPi;
    for (const auto& q : b) best = std::min(best, geodesic_distance(p, q));
    worst = std::max(worst, best);
  }
  return worst;
}

Outcome c10_polar() {
  double worst_double = 0.0;
  double worst_def = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = item_rng(1010, i);
    const Body c = random_polygon(rng);
    const Body pc = polar(c);
    worst_double = std::max(worst_double, vertex_set_distance(polar(pc).polygon().vertices(), c.polygon().vertices()));
    // Every polar vertex must be the center of a hemisphere containing the body.
    for (const auto& k : pc.polygon().vertices()) {
      worst_def = std::max(worst_def, -oracle::min_dot(c, k.vec(), 64));
    }
  }
  const Body oct = octant();
  const auto& ov = oct.polygon().vertices();
  const Body oct_polar = polar(oct);
  const auto& pv = oct_polar.polygon().vertices();
  double oct_err = 0.0;
  for (const auto& p : pv) {
    double best = 2.0;
    for (const auto& q : ov) best = std::min(best, (p.vec() - q.vec()).cwiseAbs().maxCoeff());
    oct_err = std::max(oct_err, best);
  }
  double ball_err = 0.0;
  for (const auto& nb : ball_family()) {
    const Body pb = polar(nb.body);
    const Arc& a = pb.arc_body().arcs().front();
    const double rho = nb.body.arc_body().arcs().front().radius;
    ball_err = std::max({ball_err, std::abs(a.radius - (kHalfPi - rho)),
                         geodesic_distance(a.center, nb.body.arc_body().arcs().front().center)});
  }
  return {worst_double <= 1e-9 && oct_err == 0.0 && ball_err <= 1e-9 && worst_def <= 1e-12,
          "double polar max vertex error " + sci(worst_double) + ", octant self-dual error " + sci(oct_err) +
              ", ball polar radius error " + sci(ball_err) + ", polar support violation " + sci(worst_def)};
}

Outcome c11_cli() {
  std::ostringstream out;
  std::ostringstream err;
  const int verify_code = run_cli({"verify", "--seed", "0"}, out, err);
  int rows = 0;
  int passes = 0;
  std::istringstream lines(out.str());
  for (std::string line; std::getline(lines, line);) {
    for (const char* tag : {"Lemma ", "P1 ", "P2 ", "P3 ", "T1 ", "T2 "}) {
      if (line.rfind(tag, 0) == 0) {
        ++rows;
        passes += line.find("PASS") != std::string::npos;
      }
    }
  }
  const auto dir = std::filesystem::temp_directory_path() / "sphaera_acceptance";
  std::filesystem::create_directories(dir);
  std::vector<std::string> logs;
  int search_code = 0;
  for (const char* name : {"a.jsonl", "b.jsonl"}) {
    const std::string path = (dir / name).string();
    std::ostringstream so;
    std::ostringstream se;
    search_code |= run_cli({"search", "--count", "100", "--seed", "1", "--out", path}, so, se);
    std::ifstream in(path, std::ios::binary);
    logs.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  int entries = 0;
  int agree = 0;
  std::istringstream log(logs[0]);
  for (std::string line; std::getline(log, line);) {
    ++entries;
    agree += nlohmann::json::parse(line).at("agree").get<bool>();
  }
  std::filesystem::remove_all(dir);
  const bool identical = logs[0] == logs[1];
  return {verify_code == 0 && rows == 6 && passes == 6 && search_code == 0 && entries == 100 && agree == 100 &&
              identical,
          "verify exit " + std::to_string(verify_code) + " with " + std::to_string(passes) + "/" +
              std::to_string(rows) + " rows passing; search " + std::to_string(entries) + " entries, " +
              std::to_string(agree) + " agree, reruns " + (identical ? "byte-identical" : "differ")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_seconds;
  };
  const std::vector<Criterion> criteria = {
      {"lune thickness consistency", c1_lune_thickness, 1.0},
      {"narrowest lune through a point", c2_lemma, 10.0},
      {"balls have constant width and diameter", c3_balls, 10.0},
      {"regular Reuleaux polygons", c4_regular_reuleaux, 120.0},
      {"randomized width/diameter agreement", c5_randomized, 600.0},
      {"strict convexity and polygon rejection", c6_strict_convexity, 30.0},
      {"diametral chords pairwise intersect", c7_chords, 60.0},
      {"support-chord correspondence", c8_correspondence, 60.0},
      {"width reduction vs brute force", c9_width_reduction, 300.0},
      {"polar duality", c10_polar, 60.0},
      {"CLI contract", c11_cli, 60.0},
  };
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), {}};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > criteria[i].budget_seconds) {
      o.pass = false;
      o.known_conflict.clear();
      o.detail += "; over the " + std::to_string(static_cast<int>(criteria[i].budget_seconds)) + "s budget";
    }
    std::printf("criterion %2zu %s  %s: %s [%.2fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].name,
                o.detail.c_str(), secs);
    if (!o.pass && !o.known_conflict.empty()) {
      std::printf("             known conflict: %s\n", o.known_conflict.c_str());
    } else if (!o.pass) {
      ++unexpected;
    }
    std::fflush(stdout);
  }
  return unexpected == 0 ? 0 : 1;
}
