#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace topicforge {

/// printf("%.17g") equivalent; parses back to the identical double.
std::string format_double(double value);
double parse_double(std::string_view text);

std::string read_file(const std::filesystem::path& path);
/// Splits on LF, dropping one trailing CR per line and a final empty line.
std::vector<std::string> read_lines(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

std::vector<std::string_view> split(std::string_view text, char sep);

}  // namespace topicforge
