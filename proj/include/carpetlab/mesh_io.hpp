#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "carpetlab/constructions.hpp"
#include "carpetlab/gluing.hpp"
#include "carpetlab/space.hpp"

namespace carpetlab {

/// Mesh file: {"h", "vertices": [{"id", "x", "y", "side", ...}], "edges": [[u, v, len]],
/// "marked": {name: {"kind", "ids", "component", ...}}}. Optional keys
/// (label, metric, planar, pitch, mass, cyclic, slit registry, provenance) are
/// written when present and defaulted when absent.
nlohmann::json space_to_json(const DiscreteSpace& space);
DiscreteSpace space_from_json(const nlohmann::json& j);

nlohmann::json mesh_to_json(const SlitDomainMesh& mesh);
/// Reads the slit registry when present; plain spaces load with no slits.
SlitDomainMesh mesh_from_json(const nlohmann::json& j);

nlohmann::json glued_to_json(const GluedSpace& glued);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace carpetlab
