#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace spinlie::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;
inline constexpr int kExitSpecial = 3;

struct RunManifest {
  std::string command;
  std::string config_path;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string timestamp;  // ISO-8601 UTC
  std::vector<std::string> output_paths;
};

nlohmann::json to_json(const RunManifest& m);
std::string iso_timestamp_now();
std::string tool_version();

/// Parses argv and dispatches to a subcommand. Never throws; failures map to
/// exit code 1 with a message on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, with `args` excluding the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinlie::cli
