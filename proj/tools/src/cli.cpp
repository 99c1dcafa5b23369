#include "sphaera_tools/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <sphaera/body_io.hpp>
#include <sphaera/reuleaux.hpp>
#include <sphaera/width_diameter.hpp>

#include "sphaera_tools/suite.hpp"

namespace sphaera::tools {

namespace {

std::shared_ptr<spdlog::logger> logger() {
  static const auto log = [] {
    auto l = spdlog::stderr_logger_st("sphaera-cli");
    const char* env = std::getenv("SPHAERA_LOG");
    l->set_level(spdlog::level::from_str(env ? env : "error"));
    l->set_pattern("[%l] %v");
    return l;
  }();
  return log;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check_config(const RunConfig& cfg) {
  if (!(cfg.tolerance > 0.0)) throw UsageError("--tol must be positive");
  if (cfg.samples < 64) throw UsageError("--samples must be at least 64");
  if (cfg.grid < 1000) throw UsageError("--grid must be at least 1000");
  if (!cfg.format.empty() && cfg.format != "csv" && cfg.format != "json") {
    throw UsageError("--format must be csv or json");
  }
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::vector<SpherePoint> read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
  if (!j.is_array()) throw UsageError(path + ": expected an array of [x, y, z]");
  std::vector<SpherePoint> pts;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 3 || !p[0].is_number() || !p[1].is_number() || !p[2].is_number()) {
      throw UsageError(path + ": expected an array of [x, y, z]");
    }
    pts.emplace_back(p[0].get<double>(), p[1].get<double>(), p[2].get<double>());
  }
  return pts;
}

// Output goes to --out when given, else to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write " + path);
    }
    os_ = path.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

std::string summary(const Body& body) {
  if (body.is_polygon()) return "polygon, " + std::to_string(body.polygon().size()) + " vertices";
  const auto& arcs = body.arc_body().arcs();
  return "arcs, " + std::to_string(arcs.size()) + " arcs, radius " + fixed(arcs.front().radius, 8);
}

struct MakeArgs {
  std::string kind;
  double rho = 0.3;
  int n = 3;
  double delta = 1.0;
  double jitter = 0.15;
  std::vector<double> center{0.0, 0.0, 1.0};
  std::string points;
};

int cmd_make(const MakeArgs& a, const RunConfig& cfg, std::ostream& out) {
  std::optional<Body> body;
  if (a.kind == "ball") {
    body = ball(SpherePoint(a.center[0], a.center[1], a.center[2]), a.rho);
  } else if (a.kind == "reuleaux" || a.kind == "random") {
    ReuleauxSpec spec;
    spec.n = a.n;
    spec.delta = a.delta;
    spec.jitter = a.jitter;
    if (a.kind == "reuleaux") {
      body = regular_reuleaux(spec);
    } else {
      spec.seed = cfg.seed;
      const RandomReuleaux r = random_reuleaux(spec);
      logger()->info("random Reuleaux accepted after {} attempt(s)", r.attempts);
      body = r.body;
    }
  } else if (a.kind == "hull" || a.kind == "intersection") {
    if (a.points.empty()) throw UsageError("--points FILE is required for " + a.kind);
    const auto pts = read_points(a.points);
    body = a.kind == "hull" ? Body(convex_hull(pts)) : ball_intersection(pts, a.delta);
  } else {
    throw UsageError("unknown body kind " + a.kind);
  }
  if (cfg.out.empty()) {
    out << body_to_json(*body).dump(2) << '\n';
  } else {
    write_body(*body, cfg.out);
    out << a.kind << ": " << summary(*body) << " -> " << cfg.out << '\n';
  }
  return kPass;
}

int cmd_measure(const std::string& file, const std::string& what, const RunConfig& cfg, std::ostream& out) {
  const Body body = read_body(file);
  const SweepOptions opts{cfg.samples};
  if (what == "diameter") {
    out << "diameter = " << fixed(diameter(body, opts).delta, 8) << " rad\n";
  } else if (what == "thickness") {
    out << "thickness = " << fixed(thickness(body, opts).value, 8) << " rad\n";
  } else if (what == "width-profile" || what == "diameter-profile") {
    const bool width = what == "width-profile";
    const CheckReport r =
        width ? check_constant_width(body, cfg.tolerance, opts) : check_constant_diameter(body, cfg.tolerance, opts);
    Sink sink(cfg.out, out);
    if (cfg.format == "json") {
      nlohmann::json j = to_json(r);
      nlohmann::json prof = nlohmann::json::array();
      for (const auto& s : r.profile) prof.push_back({{"at", point_to_json(s.at)}, {"value", s.value}});
      j["profile"] = prof;
      sink.stream() << j.dump(2) << '\n';
    } else if (width) {
      write_width_profile(sink.stream(), r.profile);
    } else {
      write_diameter_profile(sink.stream(), r.profile);
    }
    if (!cfg.out.empty()) {
      out << what << ": " << r.profile.size() << " samples, min " << fixed(r.observed_min, 10) << ", max "
          << fixed(r.observed_max, 10) << " -> " << cfg.out << '\n';
    }
  } else if (what == "oracle-gap") {
    double worst = 0.0;
    for (const auto& k : polar_boundary_sample(body, 50)) {
      worst = std::max(worst, std::abs(width_given_support(body, k) - width_oracle(body, k, cfg.grid)));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "max |width - oracle| = %.3e rad over 50 supports, grid %zu\n", worst, cfg.grid);
    out << buf;
  } else {
    throw UsageError("unknown measurement " + what);
  }
  return kPass;
}

CheckReport correspondence_report(const Body& body, const RunConfig& cfg) {
  const SupportChordMap map(body, cfg.tolerance, SweepOptions{cfg.samples});
  CheckReport rep;
  rep.check = "correspondence";
  rep.target = map.delta();
  rep.tolerance = cfg.tolerance;
  rep.observed_min = std::numeric_limits<double>::infinity();
  rep.observed_max = -std::numeric_limits<double>::infinity();
  bool ok = true;
  for (const auto& r : polar_boundary_sample(body, 100)) {
    const TouchResult t = touch_point(body, r);
    const DiametralChord c = map.chord_for(r);
    const double orth = chord_orthogonality_residual(c, r);
    rep.observed_min = std::min(rep.observed_min, c.length);
    rep.observed_max = std::max(rep.observed_max, c.length);
    if (!t.unique) {
      ok = false;
      rep.witnesses.push_back({"non_unique_touch", {r, t.point.point}, 0.0});
    }
    if (std::abs(c.length - map.delta()) > cfg.tolerance || orth > cfg.tolerance) {
      ok = false;
      rep.witnesses.push_back({"bad_chord", {r, c.p, c.q}, orth});
    }
  }
  rep.verdict = ok;
  return rep;
}

CheckReport lemma_report(const Body& body) {
  CheckReport rep;
  rep.check = "lemma";
  rep.tolerance = 1e-12;
  bool ok = true;
  for (const auto& k : polar_boundary_sample(body, 100)) {
    const SpherePoint p = touch_point(body, k).point.point;
    const double s = 0.5 * width_given_support(body, k);
    const SpherePoint q(std::cos(s) * p.vec() + std::sin(s) * k.vec());
    const Hemisphere kh(k);
    const double best = lune_thickness(narrowest_lune_through(kh, p, q));
    const double err = std::abs(best - geodesic_distance(p, q));
    rep.observed_max = std::max(rep.observed_max, err);
    const auto [qa, qb] = tangent_basis(q.vec());
    double undercut = 0.0;
    for (int j = 0; j < 360; ++j) {
      const double th = kTwoPi * (j + 0.5) / 360.0;
      const SpherePoint m(std::cos(th) * qa + std::sin(th) * qb);
      if (std::abs(m.dot(k)) >= 1.0 - 1e-12) continue;
      undercut = std::max(undercut, best - lune_thickness(Lune(kh, Hemisphere(m))));
    }
    if (err > 1e-12 || undercut > 1e-9) {
      ok = false;
      rep.witnesses.push_back({"lemma_violation", {k, p, q}, std::max(err, undercut)});
    }
  }
  rep.verdict = ok;
  return rep;
}

int cmd_check(const std::string& file, const std::string& which, const RunConfig& cfg, std::ostream& out) {
  const Body body = read_body(file);
  const SweepOptions opts{cfg.samples};
  CheckReport rep;
  if (which == "constant-width") {
    rep = check_constant_width(body, cfg.tolerance, opts);
  } else if (which == "constant-diameter") {
    rep = check_constant_diameter(body, cfg.tolerance, opts);
  } else if (which == "strict") {
    rep = is_strictly_convex(body);
  } else if (which == "prop2") {
    rep = check_chord_intersections(body, 200, cfg.tolerance, opts);
  } else if (which == "correspondence") {
    rep = correspondence_report(body, cfg);
  } else if (which == "lemma") {
    rep = lemma_report(body);
  } else {
    throw UsageError("unknown check " + which);
  }
  Sink sink(cfg.out, out);
  if (cfg.format == "csv") {
    if (which == "constant-width") {
      write_width_profile(sink.stream(), rep.profile);
    } else {
      write_diameter_profile(sink.stream(), rep.profile);
    }
  } else {
    sink.stream() << to_json(rep).dump(2) << '\n';
  }
  return rep.verdict ? kPass : kFail;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  out << "verify seed=" << cfg.seed << " samples=" << cfg.samples << " tol=" << cfg.tolerance << '\n';
  out << "sweep spacing is boundary length / samples; verdicts hold while tol exceeds the refinement floor "
      << kDiscretizationFloor << '\n';
  const auto rows = run_verify(cfg);
  std::size_t passed = 0;
  char line[64];
  std::snprintf(line, sizeof line, "%-6s %-5s %s", "result", "", "detail");
  out << line << '\n';
  for (const auto& row : rows) {
    std::snprintf(line, sizeof line, "%-6s %-5s ", row.result.c_str(), row.pass ? "PASS" : "FAIL");
    out << line << row.detail << '\n';
    passed += row.pass ? 1 : 0;
  }
  out << passed << "/" << rows.size() << " passed\n";
  return passed == rows.size() ? kPass : kFail;
}

int cmd_search(int count, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (count < 1) throw UsageError("--count must be at least 1");
  Sink sink(cfg.out, out);
  const SweepOptions opts{cfg.samples};
  int disagreements = 0;
  for (int i = 0; i < count; ++i) {
    const SearchItem item = search_body(cfg.seed, static_cast<std::uint64_t>(i));
    const CheckReport cd = check_constant_diameter(item.body, cfg.tolerance, opts);
    const CheckReport cw = check_constant_width(item.body, cfg.tolerance, opts);
    const bool agree = cd.verdict == cw.verdict;
    if (!agree) {
      ++disagreements;
      logger()->warn("body {} ({}): constant diameter {} but constant width {}", i, item.kind, cd.verdict,
                     cw.verdict);
    }
    const nlohmann::json entry{{"index", i},
                               {"kind", item.kind},
                               {"body", body_to_json(item.body)},
                               {"diameter_report", to_json(cd)},
                               {"width_report", to_json(cw)},
                               {"agree", agree}};
    sink.stream() << entry.dump() << '\n';
    logger()->debug("body {} ({}): {}", i, item.kind, cd.verdict ? "constant" : "not constant");
  }
  // Keep stdout a pure JSON-lines log when no --out is given.
  (cfg.out.empty() ? err : out) << count << " bodies, " << disagreements << " disagreements\n";
  return disagreements == 0 ? kPass : kFail;
}

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--tol,--tolerance", cfg.tolerance, "Verdict tolerance in radians");
  app->add_option("--samples", cfg.samples, "Boundary sweep size");
  app->add_option("--grid", cfg.grid, "Oracle grid size");
  app->add_option("--seed", cfg.seed, "Random seed");
  app->add_option("--out", cfg.out, "Output path");
  app->add_option("--format", cfg.format, "csv or json");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convex bodies on the unit sphere: widths, diameters and constant-width checks", "sphaera"};
  app.require_subcommand(1);
  RunConfig cfg;

  MakeArgs make;
  auto* make_cmd = app.add_subcommand("make", "Construct a body and write its JSON");
  make_cmd->add_option("kind", make.kind, "ball | reuleaux | random | hull | intersection")->required();
  make_cmd->add_option("--rho", make.rho, "Ball radius");
  make_cmd->add_option("--center", make.center, "Ball center x y z")->expected(3);
  make_cmd->add_option("--n", make.n, "Number of Reuleaux vertices");
  make_cmd->add_option("--delta", make.delta, "Diameter / disk radius");
  make_cmd->add_option("--jitter", make.jitter, "Random Reuleaux perturbation scale");
  make_cmd->add_option("--points", make.points, "JSON file with an array of [x, y, z]");
  add_common(make_cmd, cfg);

  std::string file;
  std::string what;
  auto* measure_cmd = app.add_subcommand("measure", "Measure a body");
  measure_cmd->add_option("file", file, "Body JSON")->required();
  measure_cmd->add_option("what", what, "diameter | thickness | width-profile | diameter-profile | oracle-gap")->required();
  add_common(measure_cmd, cfg);

  auto* check_cmd = app.add_subcommand("check", "Run a checker and print its JSON report");
  check_cmd->add_option("file", file, "Body JSON")->required();
  check_cmd
      ->add_option("which", what, "constant-width | constant-diameter | strict | prop2 | correspondence | lemma")
      ->required();
  add_common(check_cmd, cfg);

  auto* verify_cmd = app.add_subcommand("verify", "Run the full verification suite");
  add_common(verify_cmd, cfg);

  int count = 100;
  auto* search_cmd = app.add_subcommand("search", "Compare both checkers on random bodies");
  search_cmd->add_option("--count", count, "Number of bodies");
  add_common(search_cmd, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    check_config(cfg);
    if (make_cmd->parsed()) return cmd_make(make, cfg, out);
    if (measure_cmd->parsed()) return cmd_measure(file, what, cfg, out);
    if (check_cmd->parsed()) return cmd_check(file, what, cfg, out);
    if (verify_cmd->parsed()) return cmd_verify(cfg, out);
    if (search_cmd->parsed()) return cmd_search(count, cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace sphaera::tools
