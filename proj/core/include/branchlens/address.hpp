#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace branchlens {

// Code address in abstract byte-granular units.
struct Address {
  std::uint64_t value = 0;

  constexpr Address() = default;
  constexpr explicit Address(std::uint64_t v) : value(v) {}

  constexpr auto operator<=>(const Address&) const = default;

  constexpr Address operator+(std::uint64_t off) const { return Address{value + off}; }
  constexpr Address operator-(std::uint64_t off) const { return Address{value - off}; }
};

// Half-open [lo, hi).
struct AddressRange {
  Address lo;
  Address hi;

  constexpr bool contains(Address a) const { return lo <= a && a < hi; }
  constexpr bool empty() const { return !(lo < hi); }
  constexpr bool operator==(const AddressRange&) const = default;
};

// "0x1000" form, lowercase, no padding.
std::string to_hex(Address a);

// Accepts "0x"-prefixed hex or plain decimal. Throws Error(ParseError) on junk.
Address parse_address(std::string_view text);

}  // namespace branchlens

template <>
struct std::hash<branchlens::Address> {
  std::size_t operator()(const branchlens::Address& a) const noexcept {
    return std::hash<std::uint64_t>{}(a.value);
  }
};
