#include "commscale/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace commscale {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) return std::to_string(value);
  return std::string(buf.data(), end);
}

std::string format_kilo(std::uint64_t value) {
  if (value >= 1024 && value % 1024 == 0) return std::to_string(value / 1024) + "K";
  return std::to_string(value);
}

}  // namespace commscale
