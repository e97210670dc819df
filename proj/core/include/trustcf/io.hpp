#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace trustcf {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// Parses the whole of `text` as a double; nullopt-free: throws on failure.
double parse_double(std::string_view text);

/// Writes `contents` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace trustcf
