#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "branchlens/branch_record.hpp"

namespace branchlens {

// Binary layout: "BLTRACE1", u32 LE record count, then 17-byte records
// {u64 LE source, u64 LE target, u8 flags}; flags bit0 = predicted, bit1 = kernel_mode,
// bits 2-7 zero.
inline constexpr std::string_view kBtraceMagic = "BLTRACE1";
inline constexpr std::size_t kBtraceRecordSize = 17;

std::vector<std::uint8_t> encode_btrace(std::span<const BranchRecord> records);
// Throws Error(TraceFormat) on bad magic, size mismatch, or reserved flag bits.
std::vector<BranchRecord> decode_btrace(std::span<const std::uint8_t> bytes);

// One {"src","tgt","predicted","kernel"} object per line, hex addresses.
std::string encode_jsonl(std::span<const BranchRecord> records);
std::vector<BranchRecord> decode_jsonl(std::string_view text);

// Format chosen by extension: ".jsonl" is JSON lines, anything else binary.
void save_trace(const std::filesystem::path& path, std::span<const BranchRecord> records);
std::vector<BranchRecord> load_trace(const std::filesystem::path& path);

}  // namespace branchlens
