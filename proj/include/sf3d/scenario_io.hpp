// Copyright 2026 The sf3d Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef SF3D_SCENARIO_IO_HPP_
#define SF3D_SCENARIO_IO_HPP_

#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include <json.hpp>

#include "sf3d/common.hpp"
#include "sf3d/scenario.hpp"
#include "sf3d/wav.hpp"

// Scenario descriptions as JSON. Keys are emitted sorted, numbers use the
// shortest round-trip representation, so parse-then-serialize is the
// identity on canonical files. Source elevation and distance are optional
// on disk; absent values read back as NaN (azimuth-only annotations).

namespace sf3d {

namespace detail {

inline nlohmann::json vec3_to_json(const Vec3& v) {
  return nlohmann::json::array({v.x, v.y, v.z});
}

inline Vec3 vec3_from_json(const nlohmann::json& j, const char* what) {
  check(j.is_array() && j.size() == 3,
        std::string("scenario json: ") + what + " must be a 3-element array");
  return Vec3{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace detail

inline std::string serialize_scenario(const Scenario& sc) {
  nlohmann::json j;
  j["seed"] = sc.seed;
  j["sir_db"] = sc.sir_db;
  j["delay_interp"] = sc.delay_interp;
  j["room"]["dims"] = detail::vec3_to_json(sc.room.dims);
  j["room"]["t60"] = sc.room.t60;
  j["room"]["sound_speed"] = sc.room.sound_speed;
  j["array"]["reference_point"] = detail::vec3_to_json(sc.array.reference_point);
  auto positions = nlohmann::json::array();
  for (const auto& p : sc.array.positions)
    positions.push_back(detail::vec3_to_json(p));
  j["array"]["positions"] = positions;
  auto sources = nlohmann::json::array();
  for (const auto& s : sc.sources) {
    nlohmann::json js;
    js["role"] = s.role;
    js["clean"] = s.clean_name;
    js["position"] = detail::vec3_to_json(s.position);
    js["azimuth"] = s.location.azimuth;
    if (std::isfinite(s.location.elevation))
      js["elevation"] = s.location.elevation;
    if (std::isfinite(s.location.distance))
      js["distance"] = s.location.distance;
    sources.push_back(js);
  }
  j["sources"] = sources;
  return j.dump(2) + "\n";
}

inline Scenario parse_scenario(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("scenario json: parse error: ") + e.what());
  }
  try {
    Scenario sc;
    sc.seed = j.at("seed").get<std::uint64_t>();
    sc.sir_db = j.at("sir_db").get<double>();
    if (j.contains("delay_interp"))
      sc.delay_interp = j.at("delay_interp").get<std::string>();
    sc.room.dims = detail::vec3_from_json(j.at("room").at("dims"), "room.dims");
    sc.room.t60 = j.at("room").at("t60").get<double>();
    if (j.at("room").contains("sound_speed"))
      sc.room.sound_speed = j.at("room").at("sound_speed").get<double>();
    sc.array.reference_point = detail::vec3_from_json(
        j.at("array").at("reference_point"), "array.reference_point");
    for (const auto& p : j.at("array").at("positions"))
      sc.array.positions.push_back(detail::vec3_from_json(p, "array.positions[i]"));
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& js : j.at("sources")) {
      SourceSpec s;
      s.role = js.at("role").get<std::string>();
      s.clean_name = js.value("clean", std::string());
      s.position = detail::vec3_from_json(js.at("position"), "source.position");
      s.location.azimuth = js.at("azimuth").get<double>();
      s.location.elevation = js.value("elevation", nan);
      s.location.distance = js.value("distance", nan);
      sc.sources.push_back(s);
    }
    return sc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("scenario json: missing or mistyped field: ") +
                e.what());
  }
}

inline void write_scenario(const std::string& path, const Scenario& sc) {
  detail::write_file(path, serialize_scenario(sc));
}

inline Scenario read_scenario(const std::string& path) {
  return parse_scenario(detail::read_file(path));
}

}  // namespace sf3d

#endif  // SF3D_SCENARIO_IO_HPP_
