#include "branchlens/address.hpp"

#include <charconv>

#include <fmt/format.h>

#include "branchlens/error.hpp"

namespace branchlens {

std::string to_hex(Address a) { return fmt::format("{:#x}", a.value); }

Address parse_address(std::string_view text) {
  int base = 10;
  std::string_view digits = text;
  if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
    base = 16;
    digits.remove_prefix(2);
  }
  std::uint64_t value = 0;
  const auto* first = digits.data();
  const auto* last = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(first, last, value, base);
  if (digits.empty() || ec != std::errc{} || ptr != last) {
    throw Error(ErrorCode::ParseError, fmt::format("bad address '{}'", text));
  }
  return Address{value};
}

}  // namespace branchlens
