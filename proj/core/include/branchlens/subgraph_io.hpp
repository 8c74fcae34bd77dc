#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "branchlens/reconstruct.hpp"

namespace branchlens {

// {"nodes": [hex...], "edges": [[hex, hex]...], "sequence": [hex...]}
nlohmann::json to_json(const ExecutedSubgraph& sub);
// Throws Error(ParseError). "sequence" is optional.
ExecutedSubgraph subgraph_from_json(const nlohmann::json& doc);
ExecutedSubgraph load_subgraph(const std::filesystem::path& path);

// Graphviz rendering; nodes outside `user_region` are drawn as kernel boxes.
std::string to_dot(const ExecutedSubgraph& sub, AddressRange user_region);

}  // namespace branchlens
