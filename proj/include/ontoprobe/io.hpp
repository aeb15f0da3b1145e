#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ontoprobe::io {

// Both throw std::runtime_error with the path in the message.
std::string read_file(const std::filesystem::path& path);
// Writes to a temporary sibling and renames it into place.
void write_file(const std::filesystem::path& path, std::string_view content);

std::vector<std::string_view> split_lines(std::string_view text);
std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view s);

}  // namespace ontoprobe::io
