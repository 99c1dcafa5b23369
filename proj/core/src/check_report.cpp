#include "sphaera/check_report.hpp"

#include <cmath>

namespace sphaera {

bool range_verdict(double target, double observed_min, double observed_max, double tolerance) noexcept {
  return observed_max - observed_min <= tolerance && std::abs(observed_min - target) <= tolerance;
}

nlohmann::json point_to_json(const SpherePoint& p) { return nlohmann::json::array({p.x(), p.y(), p.z()}); }

nlohmann::json to_json(const CheckReport& report) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& w : report.witnesses) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : w.points) pts.push_back(point_to_json(p));
    witnesses.push_back({{"kind", w.kind}, {"points", pts}, {"value", w.value}});
  }
  return {
      {"check", report.check},
      {"verdict", report.verdict},
      {"target", report.target},
      {"observed_min", report.observed_min},
      {"observed_max", report.observed_max},
      {"tolerance", report.tolerance},
      {"witnesses", witnesses},
  };
}

}  // namespace sphaera
