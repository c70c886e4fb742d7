#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace argconc::io {

// Lines without their terminators; a trailing "\r" is stripped as well.
// Throws Error{io_error} when the file cannot be opened.
std::vector<std::string> read_lines(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary and renames it over the target, so readers
// never observe a half-written file.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

}  // namespace argconc::io
