#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "infodist/game_value.hpp"
#include "infodist/prob_core.hpp"

namespace infodist::io {

using nlohmann::json;

// Malformed input throws Error("FileFormat", ...) naming the source and the
// offending field path, e.g. "u.json: probs[1][0]: expected a number".
json parse_json(const std::string& text, const std::string& source = "<input>");
json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

json to_json(const InformationStructure& u);
json to_json(const Garbling& q);
json to_json(const ZeroSumGame& g);
json to_json(const BimatrixGame& g);

InformationStructure structure_from_json(const json& j, const std::string& source = "<input>");
Garbling garbling_from_json(const json& j, const std::string& source = "<input>");
ZeroSumGame game_from_json(const json& j, const std::string& source = "<input>");
BimatrixGame bimatrix_from_json(const json& j, const std::string& source = "<input>");
// A flat array of non-negative numbers.
std::vector<double> distribution_from_json(const json& j, const std::string& source = "<input>");
// A single game object or an array of them.
std::vector<ZeroSumGame> games_from_json(const json& j, const std::string& source = "<input>");

}  // namespace infodist::io
