#pragma once

#include <cstdint>
#include <string>

namespace commscale {

// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

// 16384 -> "16K"; values that are not a multiple of 1024 print verbatim.
std::string format_kilo(std::uint64_t value);

}  // namespace commscale
