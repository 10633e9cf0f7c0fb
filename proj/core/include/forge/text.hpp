#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace forge::text {

// Printable ASCII other than space and backslash passes through; every other
// byte becomes \xHH (uppercase hex).
std::string escape_bytes(std::string_view raw);
// Inverse of escape_bytes; std::nullopt on a malformed escape.
std::optional<std::string> unescape_bytes(std::string_view escaped);

// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);
std::optional<double> parse_double(std::string_view s);
std::optional<std::uint64_t> parse_u64(std::string_view s);
std::optional<std::int64_t> parse_i64(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

// Whole-file helpers; failures throw IoError.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);
// Lines without their terminators; a trailing newline does not add an empty line.
std::vector<std::string> read_lines(const std::filesystem::path& path);
std::vector<std::string> split_lines(std::string_view content);

}  // namespace forge::text
