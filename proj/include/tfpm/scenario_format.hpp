#pragma once

// Text formats shared by the CLI: technology/bundle/price literals, the
// sectioned key-value scenario and simulation files, and paradox reports.
//
//   # comment
//   [scenario]
//   name       = technical-progress
//   paradox    = 1
//   technology = cobb-douglas a_k=0.3 a_l=0.7
//   bundle     = K=1 L=1
//   prices     = r=1 w=1
//   shift      = 1.25

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tfpm/growth_accounting.hpp"
#include "tfpm/paradox.hpp"

namespace tfpm {

struct KeyValue {
    std::string key;
    std::string value;
    int line = 0;
};

struct Section {
    std::string name;
    int line = 0;
    std::vector<KeyValue> entries;
};

// Structural parse only. Throws Error(Parse) on lines outside sections,
// malformed lines and duplicate keys within a section.
std::vector<Section> parse_sections(std::istream& in);

// "cobb-douglas a_k=0.3 a_l=0.7 [a_m=..] [level=..]"
// "ces delta=0.5 rho=0.5 nu=1 [delta_m=.. rho_m=..] [level=..]"
// "translog a_k=0.5 b=1.2 c=-0.1 [a_m=..] [level=..]"
Technology parse_technology(std::string_view text);
std::string format_technology(const Technology& tech);

// "K=1 L=1 [M=1]"
InputBundle parse_bundle(std::string_view text);
// "r=1 w=1 [m=1]"
FactorPrices parse_prices(std::string_view text);
// "mc=1,2 y=3,4 markup=0.2,0.1"
PricingScheme parse_pricing(std::string_view text);

std::vector<ScenarioEntry> parse_scenario_file(std::istream& in);
std::vector<ScenarioEntry> load_scenario_file(const std::filesystem::path& path);

// One SimulationPaths per [simulation] section. Path values are either an
// explicit comma list or one of constant(x), geometric(start, ratio),
// linear(start, step); generators need `years`.
std::vector<SimulationPaths> parse_simulation_file(std::istream& in);
std::vector<SimulationPaths> load_simulation_file(const std::filesystem::path& path);

// CSV: paradox_id,measured_before,measured_after,true_before,true_after,
// confirmed,welfare_direction,scenario,error
void write_paradox_report(std::ostream& out, std::span<const ScenarioOutcome> outcomes);

// Human-readable summary with sub-checks and details.
void write_paradox_summary(std::ostream& out, std::span<const ScenarioOutcome> outcomes);

}  // namespace tfpm
