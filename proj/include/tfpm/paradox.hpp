#pragma once

// Before/after economies for the five measurement paradoxes. Each scenario
// varies only the quantities its paradox varies; everything else is shared
// by construction.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tfpm/econ_core.hpp"
#include "tfpm/efficiency.hpp"
#include "tfpm/error.hpp"
#include "tfpm/measurement.hpp"

namespace tfpm {

enum class WelfareDirection { Improved, UnchangedProductivity };

std::string_view to_string(WelfareDirection direction);

struct SubCheck {
    std::string name;
    bool passed;
};

struct ReportDetail {
    std::string name;
    double value;
};

struct ParadoxReport {
    int paradox_id = 0;
    double measured_before = 0.0;
    double measured_after = 0.0;
    double true_tfp_before = 0.0;
    double true_tfp_after = 0.0;
    bool paradox_confirmed = false;  // measured_after < measured_before
    WelfareDirection welfare_direction = WelfareDirection::UnchangedProductivity;
    std::vector<SubCheck> sub_checks;
    std::vector<ReportDetail> details;

    std::optional<double> detail(std::string_view name) const;
    bool all_sub_checks_passed() const;
};

struct ParadoxTolerances {
    double efficient_gap = 1e-9;     // allocative_gap above 1 - this counts as efficient
    double mpss_unit_scale = 1e-9;   // |ln lambda*| at or below this is the MPSS fixed point
    double sub_check_relative = 1e-8;
    SolverSettings solver;
};

// Technical progress at fixed inputs and prices.
ParadoxReport run_paradox_1(const Technology& tech, const InputBundle& bundle, const FactorPrices& prices,
                            const TechnologyShift& shift);

// Reallocation to the cost-minimizing bundle on the same isoquant.
ParadoxReport run_paradox_2(const Technology& tech, const FactorPrices& prices, const InputBundle& initial_bundle,
                            const ParadoxTolerances& tolerances = {});

// Rescaling along the input ray to the most productive scale size.
ParadoxReport run_paradox_3(const Technology& tech, const FactorPrices& prices, const InputBundle& bundle,
                            const ParadoxTolerances& tolerances = {});

// Strictly lower real input prices at fixed inputs and technology.
ParadoxReport run_paradox_4(const Technology& tech, const InputBundle& bundle, const FactorPrices& prices_before,
                            const FactorPrices& prices_after);

// Lower regulated markups, revenue-based TFP.
ParadoxReport run_paradox_5(const PricingScheme& pricing_before, const PricingScheme& pricing_after,
                            const Technology& tech, const InputBundle& bundle);

struct TechnicalProgressCase {
    Technology technology;
    InputBundle bundle;
    FactorPrices prices;
    TechnologyShift shift;
};

struct AllocativeCase {
    Technology technology;
    FactorPrices prices;
    InputBundle initial_bundle;
};

struct ScaleCase {
    Technology technology;
    FactorPrices prices;
    InputBundle bundle;
};

struct InputPriceCase {
    Technology technology;
    InputBundle bundle;
    FactorPrices prices_before;
    FactorPrices prices_after;
};

struct RegulatedPriceCase {
    Technology technology;
    InputBundle bundle;
    PricingScheme pricing_before;
    PricingScheme pricing_after;
};

// Alternative index + 1 is the paradox id.
using ScenarioCase = std::variant<TechnicalProgressCase, AllocativeCase, ScaleCase, InputPriceCase, RegulatedPriceCase>;

struct Scenario {
    std::string name;
    std::string description;
    ScenarioCase setup;

    int paradox_id() const { return static_cast<int>(setup.index()) + 1; }
};

ParadoxReport run_scenario(const Scenario& scenario, const ParadoxTolerances& tolerances = {});

struct ScenarioFailure {
    ErrorKind kind;
    std::string message;
};

// One declared scenario, as read from a scenario file. A malformed
// declaration carries its failure instead of a scenario.
struct ScenarioEntry {
    std::string name;
    int line = 0;
    std::optional<int> paradox_id;
    std::variant<Scenario, ScenarioFailure> content = ScenarioFailure{ErrorKind::Parse, "empty declaration"};
};

struct ScenarioOutcome {
    std::string name;
    int line = 0;
    std::optional<int> paradox_id;
    std::variant<ParadoxReport, ScenarioFailure> result;

    bool ok() const { return std::holds_alternative<ParadoxReport>(result); }
};

// Runs every entry; failures are recorded per entry and never abort the
// batch. Output is ordered by paradox id (unknown ids last), then by
// declaration order.
std::vector<ScenarioOutcome> run_all(std::span<const ScenarioEntry> entries, const ParadoxTolerances& tolerances = {});

}  // namespace tfpm
