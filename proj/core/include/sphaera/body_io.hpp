#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "sphaera/check_report.hpp"
#include "sphaera/convex_body.hpp"

namespace sphaera {

// Body files are JSON:
//   {"type": "polygon", "vertices": [[x, y, z], ...]}
//   {"type": "arcs", "arcs": [{"center": [..], "radius": r, "start": [..], "end": [..]}, ...]}
// Coordinates are renormalized on load. Anything malformed, or a shape that
// fails the body invariants, raises InvalidBody with the reason.

nlohmann::json body_to_json(const Body& body);
Body body_from_json(const nlohmann::json& j);

Body read_body(const std::filesystem::path& path);
void write_body(const Body& body, const std::filesystem::path& path);

/// CSV with columns index,k_x,k_y,k_z,width_radians.
void write_width_profile(std::ostream& os, const std::vector<ProfileSample>& profile);
/// CSV with columns index,p_x,p_y,p_z,farthest_distance_radians.
void write_diameter_profile(std::ostream& os, const std::vector<ProfileSample>& profile);

}  // namespace sphaera
