#pragma once

#include <string>

#include <json.hpp>

namespace svsa {

struct TomlParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses the TOML subset used by experiment configs into JSON: comments,
/// [table] headers (dotted names allowed), key = value with strings, booleans,
/// integers, floats and (nested) arrays. Enough for hand-authored configs;
/// not a general TOML implementation.
nlohmann::json toml_lite_parse(const std::string& text);

nlohmann::json toml_lite_parse_file(const std::string& path);

} // namespace svsa
