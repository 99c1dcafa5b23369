#include <cmath>
#include <cstdio>
#include <string>

#include <sphaera/reuleaux.hpp>
#include <sphaera/width_diameter.hpp>

#include "sphaera_tools/cli.hpp"
#include "sphaera_tools/suite.hpp"

namespace sphaera::tools {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

VerifyRow floor_failure(const std::string& result, double tol) {
  return {result, false,
          "tolerance " + sci(tol) + " is below the discretization floor " + sci(kDiscretizationFloor) +
              " of the boundary sweeps and refinements; the verdict cannot be certified"};
}

VerifyRow lemma_row(const RunConfig& cfg) {
  const LemmaStats s = lemma_trials(cfg.seed, 1000);
  const bool pass = s.max_thickness_error <= 1e-12 && s.max_undercut <= 1e-9;
  return {"Lemma", pass,
          std::to_string(s.trials) + " trials, max thickness error " + sci(s.max_thickness_error) +
              ", max undercut " + sci(s.max_undercut)};
}

VerifyRow p1_row(const RunConfig& cfg, const std::vector<NamedBody>& suite) {
  const SweepOptions opts{cfg.samples};
  for (const auto& nb : suite) {
    if (!check_constant_diameter(nb.body, cfg.tolerance, opts).verdict) {
      return {"P1", false, nb.name + " is not of constant diameter at tol " + sci(cfg.tolerance)};
    }
    if (!is_strictly_convex(nb.body).verdict) return {"P1", false, nb.name + " is not strictly convex"};
  }
  constexpr int kPolygons = 20;
  for (int i = 0; i < kPolygons; ++i) {
    auto rng = item_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL, static_cast<std::uint64_t>(i));
    const Body poly = random_polygon(rng);
    const CheckReport r = check_constant_diameter(poly, cfg.tolerance, opts);
    if (r.verdict || r.witnesses.empty()) {
      return {"P1", false, "random polygon " + std::to_string(i) + " was not rejected with a witness"};
    }
  }
  return {"P1", true,
          std::to_string(suite.size()) + " constant-diameter bodies strictly convex, " + std::to_string(kPolygons) +
              " polygons rejected"};
}

VerifyRow p2_row(const RunConfig& cfg, const std::vector<NamedBody>& suite) {
  std::size_t chords = 0;
  for (const auto& nb : suite) {
    const CheckReport r = check_chord_intersections(nb.body, 200, cfg.tolerance, SweepOptions{cfg.samples});
    if (!r.verdict) return {"P2", false, nb.name + ": disjoint diametral chords"};
    chords += 200;
  }
  return {"P2", true, std::to_string(chords) + " chords on " + std::to_string(suite.size()) +
                          " bodies pairwise intersect"};
}

VerifyRow p3_row(const RunConfig& cfg, const std::vector<NamedBody>& suite) {
  double worst_len = 0.0;
  double worst_orth = 0.0;
  for (const auto& nb : suite) {
    const SupportChordMap map(nb.body, cfg.tolerance, SweepOptions{cfg.samples});
    for (const auto& r : polar_boundary_sample(nb.body, 100)) {
      if (!touch_point(nb.body, r).unique) return {"P3", false, nb.name + ": touch point not unique"};
      const DiametralChord c = map.chord_for(r);
      worst_len = std::max(worst_len, std::abs(c.length - map.delta()));
      worst_orth = std::max(worst_orth, chord_orthogonality_residual(c, r));
    }
  }
  const bool pass = worst_len <= cfg.tolerance && worst_orth <= cfg.tolerance;
  return {"P3", pass,
          "100 supports per body, max |chord - delta| " + sci(worst_len) + ", max orthogonality residual " +
              sci(worst_orth)};
}

VerifyRow t1_row(const RunConfig& cfg) {
  const SweepOptions opts{cfg.samples};
  const double rhos[] = {0.15, 0.3, 0.45, 0.7};
  const auto balls = ball_family();
  for (std::size_t i = 0; i < balls.size(); ++i) {
    const double w = 2.0 * rhos[i];
    const CheckReport cw = check_constant_width(balls[i].body, cfg.tolerance, opts);
    const CheckReport cd = check_constant_diameter(balls[i].body, cfg.tolerance, opts);
    if (!cw.verdict || !cd.verdict || std::abs(cw.target - w) > cfg.tolerance ||
        std::abs(cd.target - w) > cfg.tolerance) {
      return {"T1", false, balls[i].name + " failed constant width/diameter 2 rho"};
    }
  }
  return {"T1", true, std::to_string(balls.size()) + " balls of constant width and diameter 2 rho"};
}

VerifyRow t2_row(const RunConfig& cfg) {
  const SweepOptions opts{cfg.samples};
  std::size_t checked = 0;
  for (const auto& nb : regular_reuleaux_family()) {
    const CheckReport cw = check_constant_width(nb.body, cfg.tolerance, opts);
    const CheckReport cd = check_constant_diameter(nb.body, cfg.tolerance, opts);
    if (cw.verdict != cd.verdict || !cw.verdict || std::abs(cw.target - cd.target) > cfg.tolerance) {
      return {"T2", false, nb.name + ": width and diameter verdicts differ"};
    }
    ++checked;
  }
  for (std::uint64_t i = 0; i < 25; ++i) {
    const SearchItem item = search_body(cfg.seed, i);
    const bool cw = check_constant_width(item.body, cfg.tolerance, opts).verdict;
    const bool cd = check_constant_diameter(item.body, cfg.tolerance, opts).verdict;
    if (cw != cd) return {"T2", false, item.kind + " #" + std::to_string(i) + ": verdicts disagree"};
    if (item.kind == "lens" && cd) return {"T2", false, "lens #" + std::to_string(i) + " passed"};
    ++checked;
  }
  return {"T2", true, std::to_string(checked) + " bodies, width and diameter verdicts agree"};
}

}  // namespace

std::vector<VerifyRow> run_verify(const RunConfig& cfg) {
  std::vector<VerifyRow> rows;
  rows.push_back(lemma_row(cfg));
  if (cfg.tolerance < kDiscretizationFloor) {
    for (const char* name : {"P1", "P2", "P3", "T1", "T2"}) rows.push_back(floor_failure(name, cfg.tolerance));
    return rows;
  }
  const auto suite = constant_diameter_suite(cfg.seed);
  auto guarded = [&](const char* name, auto&& row) {
    try {
      rows.push_back(row());
    } catch (const GeometryError& e) {
      rows.push_back({name, false, e.what()});
    }
  };
  guarded("P1", [&] { return p1_row(cfg, suite); });
  guarded("P2", [&] { return p2_row(cfg, suite); });
  guarded("P3", [&] { return p3_row(cfg, suite); });
  guarded("T1", [&] { return t1_row(cfg); });
  guarded("T2", [&] { return t2_row(cfg); });
  return rows;
}

}  // namespace sphaera::tools
