#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sphaera::tools {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

struct RunConfig {
  double tolerance = 1e-6;
  std::size_t samples = 2048;
  std::size_t grid = 10000;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
};

/// Below this, sweep-plus-refinement measurements cannot certify a verdict.
inline constexpr double kDiscretizationFloor = 1e-10;

struct VerifyRow {
  std::string result;
  bool pass = false;
  std::string detail;
};

std::vector<VerifyRow> run_verify(const RunConfig& cfg);

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sphaera::tools
