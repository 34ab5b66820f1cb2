#pragma once

#include <string>

#include <json.hpp>

#include "rainbow/alternating.hpp"
#include "rainbow/core.hpp"
#include "rainbow/monopath.hpp"

namespace rainbow {

// Family schema:
//   { "r": 2, "class": "general", "matchings": [ [[0,1],[2,3]], ... ] }
// Path instance schema (T optional; absent or empty means S-S):
//   { "S": [..], "Y": [..], "T": [..], "paths": [ [v0,v1,..], ... ] }
// Parse problems throw ValidationError naming the offending field; the
// emitters produce key-sorted JSON, so equal values serialize to equal bytes.

nlohmann::json family_to_json(const MatchingFamily& family);
MatchingFamily family_from_json(const nlohmann::json& j);
MatchingFamily load_family(const std::string& path);
void save_family(const MatchingFamily& family, const std::string& path);

nlohmann::json path_instance_to_json(const PathInstance& inst);
PathInstance path_instance_from_json(const nlohmann::json& j);
PathInstance load_path_instance(const std::string& path);
void save_path_instance(const PathInstance& inst, const std::string& path);

// { "vertices": [...], "labels": [...] }
nlohmann::json labeled_path_to_json(const LabeledPath& p);

// sparse map: { "0": [1,2], "3": [4,5] }
nlohmann::json selection_to_json(const RainbowSelection& sel);

nlohmann::json alternating_system_to_json(const AlternatingSystem& sys);
AlternatingSystem alternating_system_from_json(const nlohmann::json& j);

}  // namespace rainbow
