#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>

namespace cusplab {

using Json = nlohmann::ordered_json;

/// Pretty-printed JSON, two-space indent, doubles with 17 significant
/// digits, non-finite numbers as null. Ends with a newline.
std::string dump_json(const Json& value);

/// Parse a JSON document; IoError on malformed input or unreadable files.
Json parse_json(const std::string& text, const std::string& origin = "<string>");
Json read_json_file(const std::filesystem::path& path);

/// Writes `content` to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

/// %.17g
std::string format_double(double x);

} // namespace cusplab
