#include "sphaera/body_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

namespace sphaera {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw GeometryError(ErrorKind::InvalidBody, what); }

SpherePoint point_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) invalid(where + ": expected [x, y, z]");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) invalid(where + ": coordinates must be numbers");
    v[i] = j[i].get<double>();
  }
  if (!v.allFinite()) invalid(where + ": non-finite coordinate");
  if (v.norm() < 1e-12) invalid(where + ": zero vector");
  return SpherePoint(v);
}

const nlohmann::json& field(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) invalid(where + ": missing \"" + key + "\"");
  return j.at(key);
}

void write_profile(std::ostream& os, const std::vector<ProfileSample>& profile, const char* header) {
  os << header << '\n';
  char buf[160];
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const Vec3& v = profile[i].at.vec();
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g", i, v.x(), v.y(), v.z(), profile[i].value);
    os << buf << '\n';
  }
}

}  // namespace

nlohmann::json body_to_json(const Body& body) {
  if (body.is_polygon()) {
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : body.polygon().vertices()) verts.push_back(point_to_json(v));
    return {{"type", "polygon"}, {"vertices", verts}};
  }
  nlohmann::json arcs = nlohmann::json::array();
  for (const auto& a : body.arc_body().arcs()) {
    arcs.push_back({{"center", point_to_json(a.center)},
                    {"radius", a.radius},
                    {"start", point_to_json(a.start)},
                    {"end", point_to_json(a.end)}});
  }
  return {{"type", "arcs"}, {"arcs", arcs}};
}

Body body_from_json(const nlohmann::json& j) {
  const auto& type = field(j, "type", "body");
  if (!type.is_string()) invalid("body: \"type\" must be a string");
  try {
    if (type == "polygon") {
      const auto& list = field(j, "vertices", "polygon");
      if (!list.is_array()) invalid("polygon: \"vertices\" must be an array");
      std::vector<SpherePoint> verts;
      for (std::size_t i = 0; i < list.size(); ++i) {
        verts.push_back(point_from_json(list[i], "vertex " + std::to_string(i)));
      }
      return Body(SpherePolygon(std::move(verts)));
    }
    if (type == "arcs") {
      const auto& list = field(j, "arcs", "arcs body");
      if (!list.is_array()) invalid("arcs body: \"arcs\" must be an array");
      std::vector<Arc> arcs;
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = "arc " + std::to_string(i);
        const auto& a = list[i];
        const auto& r = field(a, "radius", where);
        if (!r.is_number()) invalid(where + ": radius must be a number");
        arcs.push_back({point_from_json(field(a, "center", where), where + " center"), r.get<double>(),
                        point_from_json(field(a, "start", where), where + " start"),
                        point_from_json(field(a, "end", where), where + " end")});
      }
      return Body(ArcBody(std::move(arcs)));
    }
  } catch (const GeometryError& e) {
    if (e.kind() == ErrorKind::InvalidBody) throw;
    invalid(e.what());
  }
  invalid("body: unknown type \"" + type.get<std::string>() + "\"");
}

Body read_body(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    invalid(path.string() + ": " + e.what());
  }
  return body_from_json(j);
}

void write_body(const Body& body, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body_to_json(body).dump(2) << '\n';
}

void write_width_profile(std::ostream& os, const std::vector<ProfileSample>& profile) {
  write_profile(os, profile, "index,k_x,k_y,k_z,width_radians");
}

void write_diameter_profile(std::ostream& os, const std::vector<ProfileSample>& profile) {
  write_profile(os, profile, "index,p_x,p_y,p_z,farthest_distance_radians");
}

}  // namespace sphaera
