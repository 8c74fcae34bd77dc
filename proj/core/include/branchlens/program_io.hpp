#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "branchlens/executor.hpp"
#include "branchlens/program.hpp"

namespace branchlens {

// Program file: {blocks[{start,end,instr}], edges[{src,dst,kind}], entry, user_region{lo,hi}}
// with hex-string addresses. Script file: {decisions[{block,occurrence,taken[,target]}],
// syscall_sites[]}. Malformed documents throw Error(ParseError).
ProgramSpec program_spec_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ProgramSpec& spec);

ExecutionScript script_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ExecutionScript& script);

// Read + parse a JSON file; IoError when unreadable, ParseError when malformed.
nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

StaticCfg load_cfg(const std::filesystem::path& path);
ExecutionScript load_script(const std::filesystem::path& path);

}  // namespace branchlens
