#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace branchlens {

__extension__ typedef unsigned __int128 wide_uint;

// Non-negative exact rational, always stored in lowest terms.
class Ratio {
public:
  constexpr Ratio() = default;
  // Throws std::domain_error on a zero denominator.
  Ratio(std::uint64_t numerator, std::uint64_t denominator);
  static Ratio from_wide(wide_uint numerator, wide_uint denominator);

  std::uint64_t numerator() const { return num_; }
  std::uint64_t denominator() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  // Decimal rendering rounded half-up, e.g. fixed(4) of 1/2 is "0.5000".
  std::string fixed(int decimals) const;
  std::uint64_t round() const;
  std::string str() const;  // "n/d"

  bool operator==(const Ratio&) const = default;
  std::strong_ordering operator<=>(const Ratio& other) const;

private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

}  // namespace branchlens
