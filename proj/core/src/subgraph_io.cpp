#include "branchlens/subgraph_io.hpp"

#include <fmt/format.h>

#include "branchlens/error.hpp"
#include "branchlens/program_io.hpp"

namespace branchlens {

using nlohmann::json;

json to_json(const ExecutedSubgraph& sub) {
  json nodes = json::array();
  for (Address n : sub.nodes) nodes.push_back(to_hex(n));
  json edges = json::array();
  for (const auto& [a, b] : sub.edges) edges.push_back(json::array({to_hex(a), to_hex(b)}));
  json sequence = json::array();
  for (Address n : sub.block_sequence) sequence.push_back(to_hex(n));
  return {{"nodes", nodes}, {"edges", edges}, {"sequence", sequence}};
}

ExecutedSubgraph subgraph_from_json(const json& doc) {
  try {
    ExecutedSubgraph sub;
    for (const json& n : doc.at("nodes")) sub.nodes.insert(parse_address(n.get<std::string>()));
    for (const json& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::ParseError, "edge must be [src, dst]");
      sub.edges.emplace(parse_address(e[0].get<std::string>()), parse_address(e[1].get<std::string>()));
    }
    if (doc.contains("sequence")) {
      for (const json& n : doc.at("sequence")) {
        sub.block_sequence.push_back(parse_address(n.get<std::string>()));
      }
    }
    for (const auto& [a, b] : sub.edges) {
      if (!sub.nodes.contains(a) || !sub.nodes.contains(b)) {
        throw Error(ErrorCode::ParseError,
                    fmt::format("edge ({}, {}) endpoint not in nodes", to_hex(a), to_hex(b)));
      }
    }
    return sub;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

ExecutedSubgraph load_subgraph(const std::filesystem::path& path) {
  try {
    return subgraph_from_json(read_json_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw e.with_context(path.string());
    throw;
  }
}

std::string to_dot(const ExecutedSubgraph& sub, AddressRange user_region) {
  std::string out = "digraph executed {\n  node [shape=ellipse];\n";
  for (Address n : sub.nodes) {
    out += fmt::format("  \"{}\"{};\n", to_hex(n),
                       user_region.contains(n) ? "" : " [shape=box, style=dashed]");
  }
  for (const auto& [a, b] : sub.edges) {
    out += fmt::format("  \"{}\" -> \"{}\";\n", to_hex(a), to_hex(b));
  }
  out += "}\n";
  return out;
}

}  // namespace branchlens
