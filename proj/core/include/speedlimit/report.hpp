#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "speedlimit/bounds.hpp"

namespace speedlimit {

struct Curve {
  std::string label;
  std::vector<double> times;
  std::vector<double> overlaps;
  double norm0 = 0.0;
};

struct RunRecord {
  nlohmann::json config;
  std::string version;
  double wall_seconds = 0.0;
  BoundReport report;
  std::vector<Curve> curves;
};

/// Key holding the wall-clock duration; the only nondeterministic field.
inline constexpr const char* kWallClockKey = "wall_seconds";
inline constexpr const char* kCsvHeader = "t,overlap,norm0,bound_name,tau,slack,valid";

enum class OutputFormat { json, csv };

/// Process exit codes of the command line tool.
enum class ExitCode : int { valid = 0, violation = 1, config = 2, numerical = 3 };

/// valid when every audited entry holds, violation otherwise.
ExitCode exit_code_for(const BoundReport& report);

OutputFormat parse_output_format(const std::string& name);

nlohmann::json to_json(const RunRecord& record);
RunRecord record_from_json(const nlohmann::json& doc);

std::string to_csv(const BoundReport& report);

/// Writes `contents` to `path` through a sibling temporary file and rename.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

/// Writes <dir>/<scenario_id>.json or .csv and returns the path.
std::filesystem::path emit(const RunRecord& record, OutputFormat format,
                           const std::filesystem::path& dir);

}  // namespace speedlimit
