#pragma once

// Command-line front end: superposition, spatial, heatmap and selftest
// subcommands writing CSV outputs plus a JSON manifest.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hdc {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Runs the CLI with `args` (program name excluded). Returns the process exit
/// status: 0 on success, 2 on invalid usage, 1 on runtime failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses integer lists such as "256,512", "1..12" or "1,5..200:5".
std::vector<int> parse_int_list(std::string_view spec);

/// Lowercase hex SHA-256 of a file's contents.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace hdc
