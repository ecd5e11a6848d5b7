#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace dri::io {

std::string read_file(const std::filesystem::path& path);

// Writes through a sibling temporary file and renames it into place, so an
// interrupted writer never leaves a truncated output behind.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Parses one JSON value per non-blank line. Errors carry "path:line".
std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path);

// Invokes `fn(line_number, value)` per line; exceptions thrown by `fn` are
// rethrown as InvalidInput tagged with the line number.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(std::size_t, const nlohmann::json&)>& fn);

std::string to_jsonl(const std::vector<nlohmann::ordered_json>& rows);

}  // namespace dri::io
