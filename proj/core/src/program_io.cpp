#include "branchlens/program_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "branchlens/error.hpp"

namespace branchlens {
namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorCode::ParseError, fmt::format("missing key '{}'", key));
  }
  return obj.at(key);
}

Address address_of(const json& v) {
  if (v.is_string()) return parse_address(v.get<std::string>());
  if (v.is_number_unsigned()) return Address{v.get<std::uint64_t>()};
  throw Error(ErrorCode::ParseError, fmt::format("bad address {}", v.dump()));
}

std::uint64_t unsigned_of(const json& v, const char* what) {
  if (!v.is_number_unsigned()) {
    throw Error(ErrorCode::ParseError, fmt::format("{} must be a non-negative integer", what));
  }
  return v.get<std::uint64_t>();
}

}  // namespace

ProgramSpec program_spec_from_json(const json& doc) {
  ProgramSpec spec;
  for (const json& b : field(doc, "blocks")) {
    spec.blocks.push_back(BasicBlock{
        address_of(field(b, "start")), address_of(field(b, "end")),
        static_cast<std::uint32_t>(unsigned_of(field(b, "instr"), "instr"))});
  }
  for (const json& e : field(doc, "edges")) {
    const json& kind = field(e, "kind");
    auto parsed = kind.is_string() ? parse_branch_kind(kind.get<std::string>()) : std::nullopt;
    if (!parsed) throw Error(ErrorCode::ParseError, fmt::format("bad edge kind {}", kind.dump()));
    spec.edges.push_back(CfgEdge{address_of(field(e, "src")), address_of(field(e, "dst")), *parsed});
  }
  spec.entry = address_of(field(doc, "entry"));
  const json& region = field(doc, "user_region");
  spec.user_region = AddressRange{address_of(field(region, "lo")), address_of(field(region, "hi"))};
  return spec;
}

json to_json(const ProgramSpec& spec) {
  json blocks = json::array();
  for (const auto& b : spec.blocks) {
    blocks.push_back({{"start", to_hex(b.start)}, {"end", to_hex(b.end)}, {"instr", b.instruction_count}});
  }
  json edges = json::array();
  for (const auto& e : spec.edges) {
    edges.push_back({{"src", to_hex(e.source)}, {"dst", to_hex(e.target)}, {"kind", to_string(e.kind)}});
  }
  return {{"blocks", blocks},
          {"edges", edges},
          {"entry", to_hex(spec.entry)},
          {"user_region", {{"lo", to_hex(spec.user_region.lo)}, {"hi", to_hex(spec.user_region.hi)}}}};
}

ExecutionScript script_from_json(const json& doc) {
  ExecutionScript script;
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "script must be an object");
  if (doc.contains("decisions")) {
    for (const json& d : doc.at("decisions")) {
      const Address block = address_of(field(d, "block"));
      const std::uint64_t occurrence = unsigned_of(field(d, "occurrence"), "occurrence");
      if (occurrence == 0) throw Error(ErrorCode::ParseError, "occurrence is 1-based");
      std::optional<Address> target;
      if (d.contains("target")) target = address_of(d.at("target"));
      bool taken = target.has_value();
      if (d.contains("taken")) {
        if (!d.at("taken").is_boolean()) throw Error(ErrorCode::ParseError, "taken must be boolean");
        taken = d.at("taken").get<bool>();
      }
      script.decide(block, occurrence, taken, target);
    }
  }
  if (doc.contains("syscall_sites")) {
    for (const json& s : doc.at("syscall_sites")) script.syscall_sites.insert(address_of(s));
  }
  return script;
}

json to_json(const ExecutionScript& script) {
  json decisions = json::array();
  for (const auto& [key, d] : script.decisions) {
    json item = {{"block", to_hex(key.first)}, {"occurrence", key.second}, {"taken", d.taken}};
    if (d.target) item["target"] = to_hex(*d.target);
    decisions.push_back(std::move(item));
  }
  json sites = json::array();
  for (Address a : script.syscall_sites) sites.push_back(to_hex(a));
  return {{"decisions", decisions}, {"syscall_sites", sites}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, fmt::format("cannot open {}", path.string()));
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, fmt::format("cannot write {}", path.string()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::IoError, fmt::format("write failed: {}", path.string()));
}

StaticCfg load_cfg(const std::filesystem::path& path) {
  try {
    return build_cfg(program_spec_from_json(read_json_file(path)));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, fmt::format("{}: {}", path.string(), e.what()));
  }
}

ExecutionScript load_script(const std::filesystem::path& path) {
  try {
    return script_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace branchlens
