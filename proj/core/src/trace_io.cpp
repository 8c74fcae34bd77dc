#include "branchlens/trace_io.hpp"

#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "branchlens/error.hpp"

namespace branchlens {
namespace {

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t offset, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= std::uint64_t{in[offset + i]} << (8 * i);
  return v;
}

bool is_jsonl(const std::filesystem::path& path) { return path.extension() == ".jsonl"; }

}  // namespace

std::vector<std::uint8_t> encode_btrace(std::span<const BranchRecord> records) {
  if (records.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::TraceFormat, fmt::format("{} records exceed u32 count", records.size()));
  }
  std::vector<std::uint8_t> out(kBtraceMagic.begin(), kBtraceMagic.end());
  out.reserve(kBtraceMagic.size() + 4 + records.size() * kBtraceRecordSize);
  put_le(out, records.size(), 4);
  for (const BranchRecord& r : records) {
    put_le(out, r.source.value, 8);
    put_le(out, r.target.value, 8);
    out.push_back(static_cast<std::uint8_t>((r.predicted ? 1 : 0) | (r.kernel_mode ? 2 : 0)));
  }
  return out;
}

std::vector<BranchRecord> decode_btrace(std::span<const std::uint8_t> bytes) {
  const std::size_t header = kBtraceMagic.size() + 4;
  if (bytes.size() < header ||
      !std::equal(kBtraceMagic.begin(), kBtraceMagic.end(), bytes.begin())) {
    throw Error(ErrorCode::TraceFormat, "missing BLTRACE1 magic");
  }
  const std::uint64_t count = get_le(bytes, kBtraceMagic.size(), 4);
  const std::size_t expected = header + count * kBtraceRecordSize;
  if (bytes.size() != expected) {
    throw Error(ErrorCode::TraceFormat,
                fmt::format("{} records need {} bytes, got {}", count, expected, bytes.size()));
  }
  std::vector<BranchRecord> records;
  records.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t at = header + i * kBtraceRecordSize;
    const std::uint8_t flags = bytes[at + 16];
    if (flags & ~0x3u) {
      throw Error(ErrorCode::TraceFormat, fmt::format("record {}: reserved flag bits {:#04x}", i, flags));
    }
    records.push_back(BranchRecord{Address{get_le(bytes, at, 8)}, Address{get_le(bytes, at + 8, 8)},
                                   (flags & 1) != 0, (flags & 2) != 0});
  }
  return records;
}

std::string encode_jsonl(std::span<const BranchRecord> records) {
  std::string out;
  for (const BranchRecord& r : records) {
    nlohmann::json line = {{"src", to_hex(r.source)},
                           {"tgt", to_hex(r.target)},
                           {"predicted", r.predicted},
                           {"kernel", r.kernel_mode}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::vector<BranchRecord> decode_jsonl(std::string_view text) {
  std::vector<BranchRecord> records;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto obj = nlohmann::json::parse(line);
      records.push_back(BranchRecord{parse_address(obj.at("src").get<std::string>()),
                                     parse_address(obj.at("tgt").get<std::string>()),
                                     obj.at("predicted").get<bool>(), obj.at("kernel").get<bool>()});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::TraceFormat, fmt::format("line {}: {}", line_no, e.what()));
    } catch (const Error& e) {
      throw Error(ErrorCode::TraceFormat, fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  return records;
}

void save_trace(const std::filesystem::path& path, std::span<const BranchRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, fmt::format("cannot write {}", path.string()));
  if (is_jsonl(path)) {
    out << encode_jsonl(records);
  } else {
    const auto bytes = encode_btrace(records);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  }
  if (!out) throw Error(ErrorCode::IoError, fmt::format("write failed: {}", path.string()));
}

std::vector<BranchRecord> load_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, fmt::format("cannot open {}", path.string()));
  std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (is_jsonl(path)) return decode_jsonl(data);
  const auto* first = reinterpret_cast<const std::uint8_t*>(data.data());
  return decode_btrace(std::span<const std::uint8_t>(first, data.size()));
}

}  // namespace branchlens
