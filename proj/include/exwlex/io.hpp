#pragma once

#include <filesystem>
#include <string>

#include "exwlex/fincat.hpp"
#include "json.hpp"

namespace exwlex {

using json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Throws UnsupportedFormat when `format_version` is missing or unknown.
void check_format_version(const json& doc);

RawCategory parse_raw_category(const json& doc);
json category_to_json(const FinCategory& c);

json load_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& doc);
/// Parses and validates a category document.
FinCategory load_category(const std::filesystem::path& path);

/// FNV-1a 64-bit content digest, as 16 hex digits.
std::string content_digest(std::string_view bytes);

}  // namespace exwlex
