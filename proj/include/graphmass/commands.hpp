#pragma once

// The four batch analyses behind the command-line tool. Each returns a JSON
// report (with the resolved config, its hash and the tool version) plus
// optional CSV tables; nothing is written until write_outputs.

#include <filesystem>
#include <string>
#include <vector>

#include "graphmass/config.hpp"
#include "json.hpp"

namespace graphmass {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitNonConvergence = 2, kExitPrecondition = 3 };

struct CsvTable {
  std::string file_name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct CommandOutput {
  std::string report_name;
  nlohmann::json report;
  std::vector<CsvTable> tables;
  int exit_code = kExitOk;
};

// 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double v);
// RFC 4180: CRLF line ends, fields quoted when they contain , " CR or LF.
std::string format_csv(const CsvTable& table);

CommandOutput run_mass(const RunConfig& config);
CommandOutput run_verify(const RunConfig& config);
CommandOutput run_penrose(const RunConfig& config);
CommandOutput run_decay(const RunConfig& config);

// Dispatch by name; throws ConfigError for an unknown command.
CommandOutput run_command(const std::string& command, const RunConfig& config);

// Creates dir if needed; the report goes to <report_name>.json.
void write_outputs(const CommandOutput& output, const std::filesystem::path& dir);

// Pseudo-random verify points: radius uniform in [radius_min, radius_max],
// direction uniform on the sphere. Reproducible for a given seed.
std::vector<std::vector<double>> sample_points(int n, const SampleSpec& spec);

}  // namespace graphmass
