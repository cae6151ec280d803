// tfpm: measured-TFP paradox scenarios and growth-accounting indices.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tfpm/cli.hpp"
#include "tfpm/error.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Public-sector TFP measurement: paradox scenarios and growth accounting"};
    app.require_subcommand(1);

    tfpm::RunConfig config;
    std::string input;
    std::string output;
    std::string plot;
    std::vector<std::string> tolerances;

    auto add_common = [&](CLI::App* sub, bool output_required) {
        sub->add_option("--input,-i", input, "Input file")->required();
        auto* out = sub->add_option("--output,-o", output, "Output file (stdout when omitted)");
        if (output_required) out->required();
        sub->add_option("--tolerance", tolerances, "Tolerance override name=value (repeatable)");
    };

    auto* paradox = app.add_subcommand("paradox", "Run a scenario file and write a CSV report");
    add_common(paradox, true);
    auto* accounting = app.add_subcommand("accounting", "Build rebased TFP indices from a panel CSV");
    add_common(accounting, true);
    accounting->add_option("--base-year", config.base_year, "Index base year (value 100)");
    accounting->add_option("--plot", plot, "Plot-data output (default <output>.plot.csv)");
    auto* simulate = app.add_subcommand("simulate", "Write a synthetic panel from trajectory definitions");
    add_common(simulate, true);
    auto* report = app.add_subcommand("report", "Run a scenario file and print a readable summary");
    add_common(report, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : tfpm::kExitInputError;
    }

    if (paradox->parsed()) config.command = tfpm::Command::Paradox;
    if (accounting->parsed()) config.command = tfpm::Command::Accounting;
    if (simulate->parsed()) config.command = tfpm::Command::Simulate;
    if (report->parsed()) config.command = tfpm::Command::Report;
    config.input_path = input;
    config.output_path = output;
    if (!plot.empty()) config.plot_path = plot;

    try {
        for (const std::string& t : tolerances) {
            const auto [name, value] = tfpm::parse_tolerance_override(t);
            config.tolerance_overrides[name] = value;
        }
    } catch (const tfpm::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return tfpm::kExitInputError;
    }

    return tfpm::run(config, std::cerr, tfpm::log_level_from_env());
}
