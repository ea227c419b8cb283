#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace attackwatch::cli {

enum class OutputFormat { json, csv };

/// Settings shared by every subcommand.
struct RunConfig {
  std::filesystem::path timeline;
  std::filesystem::path lexicons;
  std::optional<std::filesystem::path> out_dir;  // stdout when absent
  OutputFormat format = OutputFormat::json;
};

/// Bundled data directory: $ATTACKWATCH_DATA when set, else the build-time default.
std::filesystem::path default_data_dir();

/// Runs the command line. Returns 0 on success, 1 on usage or input errors and
/// 2 when `watch` raised at least one alert.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace attackwatch::cli
