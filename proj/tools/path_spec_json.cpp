#include "path_spec_json.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <vector>

#include "escapelab/errors.hpp"

namespace escapelab::cli {

namespace {

VecN vec_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw Error("path spec: expected a coordinate array");
  std::vector<double> coords;
  for (const auto& v : j) {
    if (!v.is_number()) throw Error("path spec: coordinates must be numbers");
    coords.push_back(v.get<double>());
  }
  return VecN(std::move(coords));
}

paths::UnitSpeedPath line_from_json(const nlohmann::json& spec) {
  if (spec.contains("direction")) {
    return paths::Line(vec_from_json(spec.at("direction")));
  }
  const std::size_t dim = spec.value("dim", 2);
  if (dim < 1) throw Error("path spec: line dim must be >= 1");
  return paths::Line::axis(dim);
}

paths::UnitSpeedPath polychain_from_json(const nlohmann::json& spec) {
  if (spec.contains("turn_angles")) {
    const double segment = spec.value("segment_length", 0.5);
    if (!(segment > 0.0)) throw Error("path spec: segment_length must be positive");
    const auto& angles = spec.at("turn_angles");
    if (!angles.is_array()) throw Error("path spec: turn_angles must be an array");
    std::vector<double> lengths(angles.size() + 1, segment);
    std::vector<VecN> dirs;
    double heading = 0.0;
    dirs.push_back(VecN{1.0, 0.0});
    for (const auto& a : angles) {
      if (!a.is_number()) throw Error("path spec: turn angles must be numbers");
      heading += a.get<double>();
      dirs.push_back(VecN{std::cos(heading), std::sin(heading)});
    }
    return paths::PolyChain(std::move(lengths), std::move(dirs));
  }
  if (!spec.contains("segment_lengths") || !spec.contains("directions"))
    throw Error("path spec: polychain needs segment_lengths and directions "
                "(or segment_length and turn_angles)");
  std::vector<double> lengths;
  for (const auto& v : spec.at("segment_lengths")) {
    if (!v.is_number()) throw Error("path spec: segment lengths must be numbers");
    lengths.push_back(v.get<double>());
  }
  std::vector<VecN> dirs;
  for (const auto& d : spec.at("directions")) dirs.push_back(vec_from_json(d));
  return paths::PolyChain(std::move(lengths), std::move(dirs));
}

paths::UnitSpeedPath arc_from_json(const nlohmann::json& spec) {
  if (!spec.contains("kappa") || !spec.at("kappa").is_number())
    throw Error("path spec: arc needs a numeric kappa");
  const double kappa = spec.at("kappa").get<double>();
  double arc_length = std::numeric_limits<double>::infinity();
  if (spec.value("loop", false)) {
    // keep circling; arc_length is ignored
  } else if (spec.contains("arc_length") && spec.at("arc_length").is_number()) {
    arc_length = spec.at("arc_length").get<double>();
  }
  return paths::ConstantCurvature2D(kappa, arc_length);
}

}  // namespace

paths::UnitSpeedPath path_from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("type") || !spec.at("type").is_string())
    throw Error("path spec: expected an object with a \"type\" field");
  const std::string type = spec.at("type").get<std::string>();
  if (type == "line") return line_from_json(spec);
  if (type == "polychain") return polychain_from_json(spec);
  if (type == "arc") return arc_from_json(spec);
  throw Error("path spec: unknown type \"" + type + "\"");
}

paths::UnitSpeedPath path_from_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw Error("cannot open path spec file: " + filename);
  nlohmann::json spec;
  try {
    in >> spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("path spec is not valid JSON: ") + e.what());
  }
  return path_from_json(spec);
}

}  // namespace escapelab::cli
