#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vstar {

// Byte-string escaping shared by seed files and JSON artifacts. Printable
// ASCII is kept verbatim; backslash, newline and tab get short escapes;
// every other byte becomes \xHH.
std::string escape_bytes(std::string_view raw);
std::string unescape_bytes(std::string_view escaped);

/// One seed per line, escaped with escape_bytes. A trailing newline does not
/// produce an extra empty seed; an empty line in the middle is the empty string.
std::vector<std::string> parse_seed_lines(std::string_view content);
std::vector<std::string> read_seed_file(const std::filesystem::path& path);
void write_seed_file(const std::filesystem::path& path, const std::vector<std::string>& seeds);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// Splits a command line into words using POSIX shell quoting rules
/// (single quotes, double quotes with backslash escapes, bare backslashes).
std::vector<std::string> split_shell_words(std::string_view line);

}  // namespace vstar
