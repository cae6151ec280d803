#include "tfpm/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <tuple>

#include "tfpm/error.hpp"
#include "tfpm/format.hpp"
#include "tfpm/growth_accounting.hpp"
#include "tfpm/scenario_format.hpp"

namespace tfpm {

namespace {

int exit_code_for(ErrorKind kind) { return is_internal(kind) ? kExitInternalError : kExitInputError; }

// Writes to the configured output or stdout. Content is buffered so a failed
// command leaves no partial file behind.
void emit(const std::filesystem::path& path, const std::string& content)
{
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write output file " + path.string());
    out << content;
    if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

void log_if(LogLevel level, LogLevel threshold, std::ostream& diag, const std::string& message)
{
    if (level >= threshold) diag << message << '\n';
}

int guarded(std::ostream& diag, const std::function<int()>& body)
{
    try {
        return body();
    } catch (const Error& e) {
        diag << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        diag << "internal error: " << e.what() << '\n';
        return kExitInternalError;
    }
}

std::vector<ScenarioOutcome> run_scenarios(const RunConfig& config, std::ostream& diag, LogLevel level, int& status)
{
    const RunTolerances tol = resolve_tolerances(config.tolerance_overrides);
    const std::vector<ScenarioEntry> entries = load_scenario_file(config.input_path);
    std::vector<ScenarioOutcome> outcomes = run_all(entries, tol.paradox);
    status = kExitOk;
    for (const ScenarioOutcome& o : outcomes) {
        if (const auto* f = std::get_if<ScenarioFailure>(&o.result)) {
            diag << "scenario '" << o.name << "' (line " << o.line << ") failed: " << to_string(f->kind) << ": "
                 << f->message << '\n';
            status = std::max(status, exit_code_for(f->kind));
        }
    }
    log_if(level, LogLevel::Info, diag, "ran " + std::to_string(outcomes.size()) + " scenario(s)");
    return outcomes;
}

}  // namespace

RunTolerances resolve_tolerances(const std::map<std::string, double>& overrides)
{
    RunTolerances tol;
    for (const auto& [name, value] : overrides) {
        if (!(value > 0.0)) throw Error(ErrorKind::InvalidParameter, "tolerance '" + name + "' must be positive");
        if (name == "efficient_gap") {
            tol.paradox.efficient_gap = value;
        } else if (name == "mpss_unit_scale") {
            tol.paradox.mpss_unit_scale = value;
        } else if (name == "sub_check") {
            tol.paradox.sub_check_relative = value;
        } else if (name == "solver") {
            tol.paradox.solver.tolerance = value;
        } else if (name == "share_sum") {
            tol.share_sum = value;
        } else {
            throw Error(ErrorKind::InvalidParameter, "unknown tolerance '" + name + "'");
        }
    }
    return tol;
}

std::pair<std::string, double> parse_tolerance_override(const std::string& text)
{
    const auto eq = text.find('=');
    double value = 0.0;
    if (eq == std::string::npos || eq == 0 || !parse_number(std::string_view(text).substr(eq + 1), value)) {
        throw Error(ErrorKind::InvalidParameter, "tolerance override must look like name=value, got '" + text + "'");
    }
    return {std::string(trim(std::string_view(text).substr(0, eq))), value};
}

LogLevel log_level_from_env()
{
    const char* raw = std::getenv("TFPM_LOG");
    if (raw == nullptr) return LogLevel::Warn;
    const std::string value(raw);
    if (value == "quiet") return LogLevel::Quiet;
    if (value == "info") return LogLevel::Info;
    if (value == "debug") return LogLevel::Debug;
    return LogLevel::Warn;
}

std::filesystem::path default_plot_path(const std::filesystem::path& output_path)
{
    std::filesystem::path plot = output_path;
    plot.replace_extension(".plot.csv");
    return plot;
}

int cmd_paradox(const RunConfig& config, std::ostream& diag, LogLevel level)
{
    return guarded(diag, [&] {
        int status = kExitOk;
        const std::vector<ScenarioOutcome> outcomes = run_scenarios(config, diag, level, status);
        std::ostringstream report;
        write_paradox_report(report, outcomes);
        emit(config.output_path, report.str());
        return status;
    });
}

int cmd_report(const RunConfig& config, std::ostream& diag, LogLevel level)
{
    return guarded(diag, [&] {
        int status = kExitOk;
        const std::vector<ScenarioOutcome> outcomes = run_scenarios(config, diag, level, status);
        std::ostringstream summary;
        write_paradox_summary(summary, outcomes);
        emit(config.output_path, summary.str());
        return status;
    });
}

int cmd_accounting(const RunConfig& config, std::ostream& diag, LogLevel level)
{
    return guarded(diag, [&] {
        const RunTolerances tol = resolve_tolerances(config.tolerance_overrides);
        const PanelData panel = ingest_panel(config.input_path, tol.share_sum);
        for (const std::string& w : panel.warnings) log_if(level, LogLevel::Warn, diag, "warning: " + w);
        const std::vector<SeriesIndex> indices = build_indices(panel.observations, config.base_year);

        std::ostringstream index_text;
        write_index_file(index_text, indices);
        std::ostringstream plot_text;
        write_plot_data(plot_text, indices);

        emit(config.output_path, index_text.str());
        if (config.plot_path || !config.output_path.empty()) {
            const auto plot = config.plot_path.value_or(default_plot_path(config.output_path));
            emit(plot, plot_text.str());
            log_if(level, LogLevel::Info, diag, "wrote plot data to " + plot.string());
        }
        log_if(level, LogLevel::Info, diag,
               "indexed " + std::to_string(indices.size()) + " series from " +
                   std::to_string(panel.observations.size()) + " observations");
        return static_cast<int>(kExitOk);
    });
}

int cmd_simulate(const RunConfig& config, std::ostream& diag, LogLevel level)
{
    return guarded(diag, [&] {
        std::vector<PanelObservation> panel;
        const std::vector<SimulationPaths> sims = load_simulation_file(config.input_path);
        for (std::size_t i = 0; i < sims.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (sims[i].country == sims[j].country && sims[i].industry == sims[j].industry) {
                    throw Error(ErrorKind::Parse, "two simulations share the series " + sims[i].country + "/" +
                                                      sims[i].industry);
                }
            }
        }
        for (const SimulationPaths& paths : sims) {
            std::vector<PanelObservation> part = simulate_sna_panel(paths);
            panel.insert(panel.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
        }
        std::stable_sort(panel.begin(), panel.end(), [](const PanelObservation& a, const PanelObservation& b) {
            return std::tie(a.country, a.industry, a.year) < std::tie(b.country, b.industry, b.year);
        });
        std::ostringstream text;
        write_panel(text, panel);
        emit(config.output_path, text.str());
        log_if(level, LogLevel::Info, diag, "simulated " + std::to_string(panel.size()) + " observations");
        return static_cast<int>(kExitOk);
    });
}

int run(const RunConfig& config, std::ostream& diag, LogLevel level)
{
    switch (config.command) {
    case Command::Paradox: return cmd_paradox(config, diag, level);
    case Command::Accounting: return cmd_accounting(config, diag, level);
    case Command::Simulate: return cmd_simulate(config, diag, level);
    case Command::Report: return cmd_report(config, diag, level);
    }
    return kExitInternalError;
}

}  // namespace tfpm
