#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace revdetect::util {

// Writes `content` to a sibling temp file and renames it over `path`, creating
// parent directories as needed. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Throws IoError if the file cannot be opened.
std::string read_file(const std::filesystem::path& path);

// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

}  // namespace revdetect::util
