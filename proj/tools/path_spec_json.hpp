#pragma once

#include <string>

#include <json.hpp>

#include "escapelab/paths.hpp"

namespace escapelab::cli {

// Builds a path from its JSON description:
//   {"type": "line", "dim": 2}                    unit direction on axis 1
//   {"type": "line", "direction": [ux, uy, ...]}  explicit unit direction
//   {"type": "polychain", "segment_lengths": [...], "directions": [[...], ...]}
//   {"type": "polychain", "segment_length": s, "turn_angles": [...]}   (2D)
//   {"type": "arc", "kappa": k, "arc_length": L}
//   {"type": "arc", "kappa": k, "loop": true}     circles forever
// Throws escapelab::Error on malformed input.
paths::UnitSpeedPath path_from_json(const nlohmann::json& spec);

paths::UnitSpeedPath path_from_file(const std::string& filename);

}  // namespace escapelab::cli
