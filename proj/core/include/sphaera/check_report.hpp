#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "sphaera/sphere_core.hpp"

namespace sphaera {

/// Where a checked quantity hit its extreme, or what broke a property.
struct Witness {
  std::string kind;
  std::vector<SpherePoint> points;
  double value = 0.0;
};

struct ProfileSample {
  SpherePoint at;
  double value = 0.0;
};

// Verdict of a checker plus the evidence behind it. For measured checks the
// verdict holds iff observed_max - observed_min <= tolerance and
// |observed_min - target| <= tolerance.
struct CheckReport {
  std::string check;
  bool verdict = false;
  double target = 0.0;
  double observed_min = 0.0;
  double observed_max = 0.0;
  double tolerance = 0.0;
  std::vector<Witness> witnesses;
  std::vector<ProfileSample> profile;
};

/// Applies the min/max/target verdict rule.
bool range_verdict(double target, double observed_min, double observed_max, double tolerance) noexcept;

nlohmann::json to_json(const CheckReport& report);
nlohmann::json point_to_json(const SpherePoint& p);

}  // namespace sphaera
