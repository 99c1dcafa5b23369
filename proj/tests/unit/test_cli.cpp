#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <sphaera_tools/cli.hpp>

using sphaera::tools::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
  std::filesystem::path path = std::filesystem::temp_directory_path() / "sphaera_cli_test";
  TempDir() { std::filesystem::create_directories(path); }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string operator/(const char* name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("make, measure and check") {
  TempDir dir;
  const std::string t = dir / "t.json";
  const std::string b = dir / "b.json";

  Run r = run({"make", "reuleaux", "--n", "3", "--delta", "1.0", "--out", t});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(slurp(t)).at("arcs").size() == 3);

  r = run({"make", "reuleaux", "--n", "4", "--delta", "1.0"});
  CHECK(r.code == 2);
  CHECK(r.err.find("n must be odd") != std::string::npos);

  CHECK(run({"make", "ball", "--rho", "0.3", "--out", b}).code == 0);
  CHECK(nlohmann::json::parse(slurp(b)).at("arcs").size() == 1);

  r = run({"measure", t, "diameter"});
  CHECK(r.code == 0);
  CHECK(r.out == "diameter = 1.00000000 rad\n");

  r = run({"measure", b, "thickness"});
  CHECK(r.out == "thickness = 0.60000000 rad\n");

  r = run({"measure", b, "oracle-gap", "--grid", "2000"});
  CHECK(r.code == 0);
  CHECK(std::stod(r.out.substr(r.out.find('=') + 1)) <= 1e-2);

  const std::string csv = dir / "w.csv";
  CHECK(run({"measure", t, "width-profile", "--out", csv}).code == 0);
  std::istringstream rows(slurp(csv));
  std::string line;
  std::getline(rows, line);
  CHECK(line == "index,k_x,k_y,k_z,width_radians");
  int count = 0;
  while (std::getline(rows, line)) {
    const double w = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(std::abs(w - 1.0) <= 1e-6);
    ++count;
  }
  CHECK(count == 2048);

  for (const char* which : {"constant-width", "constant-diameter", "strict", "prop2", "correspondence", "lemma"}) {
    r = run({"check", t, which});
    CAPTURE(which);
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("verdict").get<bool>());
  }

  const std::string lens = dir / "lens.json";
  const std::string pts = dir / "pts.json";
  std::ofstream(pts) << "[[0,0,1],[0.8414709848078965,0,0.5403023058681398]]";
  CHECK(run({"make", "intersection", "--points", pts, "--delta", "1.0", "--out", lens}).code == 0);
  r = run({"check", lens, "constant-width"});
  CHECK(r.code == 1);
  CHECK_FALSE(nlohmann::json::parse(r.out).at("verdict").get<bool>());
  CHECK(run({"check", lens, "prop2"}).code == 2);
}

TEST_CASE("usage errors exit 2") {
  TempDir dir;
  const std::string bad = dir / "bad.json";
  std::ofstream(bad) << "{\"type\": \"polygon\", \"vertices\": [[1,0,0]]}";
  Run r = run({"measure", bad, "diameter"});
  CHECK(r.code == 2);
  CHECK(r.err.find("InvalidBody") != std::string::npos);

  std::ofstream(dir / "junk.json") << "not json";
  CHECK(run({"check", dir / "junk.json", "strict"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "--samples", "10"}).code == 2);
  CHECK(run({"verify", "--tol", "-1"}).code == 2);
  CHECK(run({"search", "--count", "0"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify") {
  Run r = run({"verify", "--seed", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("6/6 passed") != std::string::npos);

  r = run({"verify", "--seed", "7", "--samples", "512"});
  CHECK(r.code == 0);

  r = run({"verify", "--tolerance", "1e-12"});
  CHECK(r.code == 1);
  CHECK(r.out.find("discretization floor") != std::string::npos);
}

TEST_CASE("search log") {
  TempDir dir;
  const std::string a = dir / "a.jsonl";
  const std::string b = dir / "b.jsonl";
  CHECK(run({"search", "--count", "10", "--seed", "2", "--out", a}).code == 0);
  CHECK(run({"search", "--count", "10", "--seed", "2", "--out", b}).code == 0);
  const std::string log = slurp(a);
  CHECK(log == slurp(b));
  std::istringstream lines(log);
  int n = 0;
  for (std::string line; std::getline(lines, line); ++n) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("body"));
    CHECK(j.at("diameter_report").contains("verdict"));
    CHECK(j.at("width_report").contains("verdict"));
    CHECK(j.at("agree").get<bool>());
  }
  CHECK(n == 10);

  // Without --out the log goes to stdout and the summary to stderr.
  const Run r = run({"search", "--count", "3", "--seed", "2"});
  CHECK(r.out.substr(0, 200) == log.substr(0, 200));
  CHECK(r.err.find("3 bodies") != std::string::npos);
}
