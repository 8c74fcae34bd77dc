#include "branchlens/ratio.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace branchlens {
namespace {

using u128 = wide_uint;

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Ratio::Ratio(std::uint64_t numerator, std::uint64_t denominator) {
  if (denominator == 0) throw std::domain_error("zero denominator");
  const std::uint64_t g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

Ratio Ratio::from_wide(u128 numerator, u128 denominator) {
  if (denominator == 0) throw std::domain_error("zero denominator");
  const u128 g = gcd128(numerator, denominator);
  numerator /= g;
  denominator /= g;
  constexpr u128 kMax = std::numeric_limits<std::uint64_t>::max();
  if (numerator > kMax || denominator > kMax) throw std::overflow_error("ratio exceeds 64 bits");
  return Ratio(static_cast<std::uint64_t>(numerator), static_cast<std::uint64_t>(denominator));
}

std::string Ratio::fixed(int decimals) const {
  u128 scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const u128 scaled = (u128{num_} * scale * 2 + den_) / (u128{den_} * 2);
  const auto whole = static_cast<std::uint64_t>(scaled / scale);
  const auto frac = static_cast<std::uint64_t>(scaled % scale);
  if (decimals == 0) return fmt::format("{}", whole);
  return fmt::format("{}.{:0{}}", whole, frac, decimals);
}

std::uint64_t Ratio::round() const {
  return static_cast<std::uint64_t>((u128{num_} * 2 + den_) / (u128{den_} * 2));
}

std::string Ratio::str() const { return fmt::format("{}/{}", num_, den_); }

std::strong_ordering Ratio::operator<=>(const Ratio& other) const {
  return u128{num_} * other.den_ <=> u128{other.num_} * den_;
}

}  // namespace branchlens
