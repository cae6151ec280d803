#include "tfpm/paradox.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace tfpm {

namespace {

bool close_relative(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

double level_tfp(const Technology& tech, const InputBundle& bundle)
{
    return true_tfp(evaluate(tech, bundle), tech, bundle);
}

ParadoxReport base_report(int id, double measured_before, double measured_after)
{
    ParadoxReport report;
    report.paradox_id = id;
    report.measured_before = measured_before;
    report.measured_after = measured_after;
    report.paradox_confirmed = measured_after < measured_before;
    return report;
}

}  // namespace

std::string_view to_string(WelfareDirection direction)
{
    return direction == WelfareDirection::Improved ? "improved" : "unchanged-productivity";
}

std::optional<double> ParadoxReport::detail(std::string_view name) const
{
    for (const ReportDetail& d : details) {
        if (d.name == name) return d.value;
    }
    return std::nullopt;
}

bool ParadoxReport::all_sub_checks_passed() const
{
    return std::all_of(sub_checks.begin(), sub_checks.end(), [](const SubCheck& c) { return c.passed; });
}

ParadoxReport run_paradox_1(const Technology& tech, const InputBundle& bundle, const FactorPrices& prices,
                            const TechnologyShift& shift)
{
    const Technology shifted = apply_technical_progress(tech, shift);
    const MeasuredTfp before = measured_tfp_cost_based(prices, bundle, tech);
    const MeasuredTfp after = measured_tfp_cost_based(prices, bundle, shifted);

    ParadoxReport report = base_report(1, before.value, after.value);
    // True TFP on both sides is frontier output at the fixed inputs over the
    // pre-shift production function.
    report.true_tfp_before = true_tfp(before.denominator, tech, bundle);
    report.true_tfp_after = true_tfp(after.denominator, tech, bundle);
    report.welfare_direction = WelfareDirection::Improved;
    report.sub_checks.push_back({"frontier_dominates", after.denominator > before.denominator});
    report.details = {{"shift_factor", shift.factor},
                      {"cost", before.numerator},
                      {"frontier_before", before.denominator},
                      {"frontier_after", after.denominator}};
    return report;
}

ParadoxReport run_paradox_2(const Technology& tech, const FactorPrices& prices, const InputBundle& initial_bundle,
                            const ParadoxTolerances& tolerances)
{
    const double gap = allocative_gap(tech, prices, initial_bundle, tolerances.solver);
    if (gap > 1.0 - tolerances.efficient_gap) {
        throw Error(ErrorKind::AlreadyEfficient, "initial bundle is already cost minimizing; no reallocation exists");
    }
    const double target = evaluate(tech, initial_bundle);
    const CostMinResult optimum = min_cost_bundle(tech, prices, target, tolerances.solver);

    const MeasuredTfp before = measured_tfp_cost_based(prices, initial_bundle, tech);
    const MeasuredTfp after = measured_tfp_cost_based(prices, optimum.bundle, tech);

    ParadoxReport report = base_report(2, before.value, after.value);
    report.true_tfp_before = level_tfp(tech, initial_bundle);
    report.true_tfp_after = level_tfp(tech, optimum.bundle);
    const bool per_cost_up = after.denominator / after.numerator > before.denominator / before.numerator;
    report.welfare_direction = per_cost_up ? WelfareDirection::Improved : WelfareDirection::UnchangedProductivity;
    report.sub_checks = {
        {"same_frontier_output", close_relative(after.denominator, before.denominator, tolerances.sub_check_relative)},
        {"lower_cost", after.numerator < before.numerator},
    };
    report.details = {{"allocative_gap", gap},
                      {"cost_before", before.numerator},
                      {"cost_after", after.numerator},
                      {"frontier_before", before.denominator},
                      {"frontier_after", after.denominator},
                      {"capital_after", optimum.bundle.capital},
                      {"labor_after", optimum.bundle.labor}};
    return report;
}

ParadoxReport run_paradox_3(const Technology& tech, const FactorPrices& prices, const InputBundle& bundle,
                            const ParadoxTolerances& tolerances)
{
    const auto* params = std::get_if<TranslogParams>(&tech.params());
    if (params == nullptr || !(params->c < 0.0)) {
        throw Error(ErrorKind::InvalidTechnology,
                    "scale-efficiency scenarios need a homothetic translog technology with c < 0");
    }
    const MpssResult mpss = find_mpss(tech, bundle, tolerances.solver);
    double lambda = mpss.scale_factor;
    if (std::abs(std::log(lambda)) <= tolerances.mpss_unit_scale) lambda = 1.0;
    const InputBundle rescaled = scaled(bundle, lambda);

    const MeasuredTfp before = measured_tfp_cost_based(prices, bundle, tech);
    const MeasuredTfp after = measured_tfp_cost_based(prices, rescaled, tech);

    ParadoxReport report = base_report(3, before.value, after.value);
    report.true_tfp_before = level_tfp(tech, bundle);
    report.true_tfp_after = level_tfp(tech, rescaled);
    report.welfare_direction = lambda != 1.0 ? WelfareDirection::Improved : WelfareDirection::UnchangedProductivity;

    report.sub_checks.push_back(
        {"unit_scale_elasticity_at_mpss", std::abs(scale_elasticity(tech, mpss.bundle_at_mpss) - 1.0) < 1e-7});
    report.sub_checks.push_back(
        {"cost_scales_proportionally", close_relative(after.numerator, lambda * before.numerator, 1e-12)});
    // Both branches reduce to f(s x) > s f(x): more than proportional growth
    // when s > 1, less than proportional decrease when s < 1.
    if (lambda > 1.0) {
        report.sub_checks.push_back(
            {"more_than_proportional_output", after.denominator > lambda * before.denominator});
    } else if (lambda < 1.0) {
        report.sub_checks.push_back(
            {"less_than_proportional_decrease", after.denominator > lambda * before.denominator});
    }
    report.details = {{"scale_factor", lambda},
                      {"scale_elasticity_before", scale_elasticity(tech, bundle)},
                      {"scale_elasticity_at_mpss", scale_elasticity(tech, mpss.bundle_at_mpss)},
                      {"cost_before", before.numerator},
                      {"cost_after", after.numerator},
                      {"frontier_before", before.denominator},
                      {"frontier_after", after.denominator}};
    return report;
}

ParadoxReport run_paradox_4(const Technology& tech, const InputBundle& bundle, const FactorPrices& prices_before,
                            const FactorPrices& prices_after)
{
    validate(prices_before);
    validate(prices_after);
    if (!(prices_after.capital_price < prices_before.capital_price && prices_after.wage < prices_before.wage)) {
        throw Error(ErrorKind::NonDominatedPrices, "both real input prices must fall strictly");
    }
    const MeasuredTfp before = measured_tfp_cost_based(prices_before, bundle, tech);
    const MeasuredTfp after = measured_tfp_cost_based(prices_after, bundle, tech);

    ParadoxReport report = base_report(4, before.value, after.value);
    report.true_tfp_before = level_tfp(tech, bundle);
    report.true_tfp_after = report.true_tfp_before;
    report.welfare_direction = WelfareDirection::UnchangedProductivity;
    report.details = {{"cost_before", before.numerator},
                      {"cost_after", after.numerator},
                      {"cost_ratio", after.numerator / before.numerator},
                      {"frontier", before.denominator}};
    return report;
}

ParadoxReport run_paradox_5(const PricingScheme& pricing_before, const PricingScheme& pricing_after,
                            const Technology& tech, const InputBundle& bundle)
{
    validate(pricing_before);
    validate(pricing_after);
    if (pricing_before.items.size() != pricing_after.items.size()) {
        throw Error(ErrorKind::LengthMismatch, "pricing schemes list different numbers of outputs");
    }
    for (std::size_t i = 0; i < pricing_before.items.size(); ++i) {
        const PricedOutput& b = pricing_before.items[i];
        const PricedOutput& a = pricing_after.items[i];
        if (a.marginal_cost != b.marginal_cost || a.quantity != b.quantity) {
            throw Error(ErrorKind::ScenarioMismatch, "marginal costs and quantities must be unchanged");
        }
        if (!(a.markup < b.markup)) {
            throw Error(ErrorKind::MarkupNotReduced, "every markup must fall strictly");
        }
    }
    const MeasuredTfp before = measured_tfp_revenue(pricing_before, tech, bundle);
    const MeasuredTfp after = measured_tfp_revenue(pricing_after, tech, bundle);

    ParadoxReport report = base_report(5, before.value, after.value);
    report.true_tfp_before = level_tfp(tech, bundle);
    report.true_tfp_after = report.true_tfp_before;
    report.welfare_direction = WelfareDirection::UnchangedProductivity;
    report.sub_checks.push_back({"denominator_unchanged", after.denominator == before.denominator});
    report.details = {{"revenue_before", before.numerator},
                      {"revenue_after", after.numerator},
                      {"frontier", before.denominator}};
    return report;
}

ParadoxReport run_scenario(const Scenario& scenario, const ParadoxTolerances& tolerances)
{
    struct Visitor {
        const ParadoxTolerances& tol;
        ParadoxReport operator()(const TechnicalProgressCase& c) const
        {
            return run_paradox_1(c.technology, c.bundle, c.prices, c.shift);
        }
        ParadoxReport operator()(const AllocativeCase& c) const
        {
            return run_paradox_2(c.technology, c.prices, c.initial_bundle, tol);
        }
        ParadoxReport operator()(const ScaleCase& c) const
        {
            return run_paradox_3(c.technology, c.prices, c.bundle, tol);
        }
        ParadoxReport operator()(const InputPriceCase& c) const
        {
            return run_paradox_4(c.technology, c.bundle, c.prices_before, c.prices_after);
        }
        ParadoxReport operator()(const RegulatedPriceCase& c) const
        {
            return run_paradox_5(c.pricing_before, c.pricing_after, c.technology, c.bundle);
        }
    };
    return std::visit(Visitor{tolerances}, scenario.setup);
}

std::vector<ScenarioOutcome> run_all(std::span<const ScenarioEntry> entries, const ParadoxTolerances& tolerances)
{
    std::vector<ScenarioOutcome> outcomes;
    outcomes.reserve(entries.size());
    for (const ScenarioEntry& entry : entries) {
        ScenarioOutcome outcome{entry.name, entry.line, entry.paradox_id, ScenarioFailure{ErrorKind::Parse, ""}};
        if (const auto* failure = std::get_if<ScenarioFailure>(&entry.content)) {
            outcome.result = *failure;
        } else {
            try {
                outcome.result = run_scenario(std::get<Scenario>(entry.content), tolerances);
            } catch (const Error& e) {
                outcome.result = ScenarioFailure{e.kind(), e.what()};
            }
        }
        outcomes.push_back(std::move(outcome));
    }
    std::stable_sort(outcomes.begin(), outcomes.end(), [](const ScenarioOutcome& a, const ScenarioOutcome& b) {
        return a.paradox_id.value_or(6) < b.paradox_id.value_or(6);
    });
    return outcomes;
}

}  // namespace tfpm
