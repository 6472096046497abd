#ifndef RANKONE_CLI_HPP
#define RANKONE_CLI_HPP

#include "rankone/construction.hpp"
#include "rankone/errors.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace rankone::cli {

using Json = nlohmann::ordered_json;

/// Command-line values that take precedence over the config file.
struct Overrides {
  std::optional<unsigned> precision;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> budget_floors;
  std::optional<int> stage_cap;
};

/// A validated run configuration. `document` keeps the command blocks verbatim;
/// their schema is checked when the command runs, before any output is written.
struct RunConfig {
  ConstructionParams params;
  Limits limits;
  unsigned precision = 12;
  std::uint64_t seed = 0;
  std::int64_t budget_floors = 100'000;
  Json document;
};

RunConfig parse_config(const Json& document, const Overrides& overrides = {});
RunConfig load_config(const std::filesystem::path& path, const Overrides& overrides = {});

/// Canonical echo of the parameters, limits, precision, seed and budget.
Json provenance(const RunConfig& config);

struct Report {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  Json summary = Json::object();
  Json provenance = Json::object();
  std::vector<std::string> warnings;
  int exit_code = 0;  // 0 clean, 1 a violation was detected
};

const std::vector<std::string>& command_names();

/// Runs one subcommand fully in memory.
Report run_command(const RunConfig& config, std::string_view command);

std::string render_csv(const Report& report);
std::string render_json(const Report& report);
std::string render_table(const Report& report, std::size_t max_rows = 40);

/// Writes <dir>/<command>.csv and <dir>/<command>.json.
void write_report(const Report& report, const std::filesystem::path& dir);

/// 1 for detected violations, 2 for configuration errors, 3 for resource limits.
int exit_code_for(ErrorKind kind);

/// The `rankone` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rankone::cli

#endif
