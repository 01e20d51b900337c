#pragma once

// Internal helpers shared by the JSON readers. Not installed.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "commscale/types.hpp"

namespace commscale::detail {

using json = nlohmann::json;

std::string join_path(std::string_view parent, std::string_view key);

json parse_json(std::string_view text, std::string_view what);

const json& require_object(const json& value, const std::string& path);

// Throws ParseError if `obj` carries a key outside `allowed`.
void reject_unknown_keys(const json& obj, const std::string& path,
                         std::initializer_list<std::string_view> allowed);

std::uint64_t as_uint(const json& value, const std::string& path);
double as_double(const json& value, const std::string& path);
std::string as_string(const json& value, const std::string& path);

HardwareConfig hardware_from_json(const json& obj, const std::string& path);
json hardware_to_json(const HardwareConfig& hw);

}  // namespace commscale::detail
