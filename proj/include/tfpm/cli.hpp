#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "tfpm/paradox.hpp"

namespace tfpm {

enum class Command { Paradox, Accounting, Simulate, Report };

struct RunConfig {
    Command command = Command::Paradox;
    std::filesystem::path input_path;
    std::filesystem::path output_path;           // empty: stdout
    std::optional<std::filesystem::path> plot_path;  // accounting only
    int base_year = 1995;
    std::map<std::string, double> tolerance_overrides;
};

enum ExitCode : int { kExitOk = 0, kExitInputError = 1, kExitInternalError = 2 };

struct RunTolerances {
    ParadoxTolerances paradox;
    double share_sum = 1e-6;
};

// Recognized names: efficient_gap, mpss_unit_scale, sub_check, solver,
// share_sum. Throws Error(InvalidParameter) for anything else.
RunTolerances resolve_tolerances(const std::map<std::string, double>& overrides);

// Parses "name=value" for --tolerance.
std::pair<std::string, double> parse_tolerance_override(const std::string& text);

enum class LogLevel { Quiet, Warn, Info, Debug };

// TFPM_LOG = quiet | warn | info | debug (default warn).
LogLevel log_level_from_env();

// Each returns an exit status; diagnostics go to `diag`.
int cmd_paradox(const RunConfig& config, std::ostream& diag, LogLevel level = LogLevel::Warn);
int cmd_accounting(const RunConfig& config, std::ostream& diag, LogLevel level = LogLevel::Warn);
int cmd_simulate(const RunConfig& config, std::ostream& diag, LogLevel level = LogLevel::Warn);
int cmd_report(const RunConfig& config, std::ostream& diag, LogLevel level = LogLevel::Warn);

int run(const RunConfig& config, std::ostream& diag, LogLevel level = LogLevel::Warn);

// Default plot-data path next to the index output: idx.csv -> idx.plot.csv.
std::filesystem::path default_plot_path(const std::filesystem::path& output_path);

}  // namespace tfpm
