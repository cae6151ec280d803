#include "tfpm/measurement.hpp"

#include <cmath>
#include <string>

#include "tfpm/error.hpp"
#include "tfpm/format.hpp"

namespace tfpm {

namespace {

constexpr double kShareSumTolerance = 1e-9;

MeasuredTfp make_measured(double numerator, double denominator, Convention convention)
{
    if (!(denominator > 0.0)) {
        throw Error(ErrorKind::Domain, "production function evaluates to zero");
    }
    return MeasuredTfp{numerator / denominator, convention, numerator, denominator};
}

}  // namespace

void validate(const OutputMix& mix)
{
    if (mix.outputs.empty()) throw Error(ErrorKind::InvalidParameter, "output mix is empty");
    if (!(std::isfinite(mix.coverage) && mix.coverage > 0.0 && mix.coverage <= 1.0)) {
        throw Error(ErrorKind::InvalidParameter, "coverage must lie in (0, 1]");
    }
    double share_sum = 0.0;
    for (std::size_t i = 0; i < mix.outputs.size(); ++i) {
        const OutputItem& item = mix.outputs[i];
        if (item.quantity == 0.0) {
            throw Error(ErrorKind::ZeroQuantity, "output " + std::to_string(i) + " has zero quantity");
        }
        if (!(std::isfinite(item.quantity) && item.quantity > 0.0)) {
            throw Error(ErrorKind::InvalidParameter, "output " + std::to_string(i) + " quantity must be positive");
        }
        if (!(std::isfinite(item.cost_share) && item.cost_share > 0.0)) {
            throw Error(ErrorKind::InvalidParameter, "output " + std::to_string(i) + " cost share must be positive");
        }
        share_sum += item.cost_share;
    }
    if (std::abs(share_sum - mix.coverage) > kShareSumTolerance) {
        throw Error(ErrorKind::InvalidParameter,
                    "cost shares sum to " + format_number(share_sum) + " but coverage is " +
                        format_number(mix.coverage));
    }
}

void validate(const PricingScheme& pricing)
{
    if (pricing.items.empty()) throw Error(ErrorKind::InvalidParameter, "pricing scheme is empty");
    for (std::size_t i = 0; i < pricing.items.size(); ++i) {
        const PricedOutput& item = pricing.items[i];
        const std::string idx = std::to_string(i);
        if (!(std::isfinite(item.marginal_cost) && item.marginal_cost > 0.0)) {
            throw Error(ErrorKind::InvalidParameter, "item " + idx + " marginal cost must be positive");
        }
        if (!(std::isfinite(item.markup) && item.markup > -1.0)) {
            throw Error(ErrorKind::InvalidParameter, "item " + idx + " markup must exceed -1");
        }
        if (!(std::isfinite(item.quantity) && item.quantity > 0.0)) {
            throw Error(ErrorKind::InvalidParameter, "item " + idx + " quantity must be positive");
        }
    }
}

std::string_view to_string(Convention convention)
{
    switch (convention) {
    case Convention::CostBasedVA: return "CostBasedVA";
    case Convention::CostWeightedIndex: return "CostWeightedIndex";
    case Convention::DistortedRevenue: return "DistortedRevenue";
    }
    return "unknown";
}

std::optional<Convention> convention_from_string(std::string_view name)
{
    for (Convention c : {Convention::CostBasedVA, Convention::CostWeightedIndex, Convention::DistortedRevenue}) {
        if (to_string(c) == name) return c;
    }
    return std::nullopt;
}

double cost_based_value_added(const FactorPrices& prices, const InputBundle& bundle)
{
    return input_cost(prices, bundle);
}

MeasuredTfp measured_tfp_cost_based(const FactorPrices& prices, const InputBundle& bundle, const Technology& tech)
{
    return make_measured(cost_based_value_added(prices, bundle), evaluate(tech, bundle), Convention::CostBasedVA);
}

std::vector<double> unit_costs_from_allocation(double total_cost, const OutputMix& mix)
{
    if (!(std::isfinite(total_cost) && total_cost > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "total cost must be positive");
    }
    validate(mix);
    std::vector<double> costs;
    costs.reserve(mix.outputs.size());
    for (const OutputItem& item : mix.outputs) costs.push_back(item.cost_share * total_cost / item.quantity);
    return costs;
}

double cost_weighted_output(const OutputMix& mix, std::span<const double> unit_costs)
{
    if (unit_costs.size() != mix.outputs.size()) {
        throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(mix.outputs.size()) +
                                                   " unit costs, got " + std::to_string(unit_costs.size()));
    }
    double total = 0.0;
    for (std::size_t i = 0; i < unit_costs.size(); ++i) {
        if (!(unit_costs[i] > 0.0) || !(mix.outputs[i].quantity > 0.0)) {
            throw Error(ErrorKind::InvalidParameter, "unit costs and quantities must be positive");
        }
        total += unit_costs[i] * mix.outputs[i].quantity;
    }
    return total;
}

MeasuredTfp measured_tfp_cost_weighted(const FactorPrices& prices, const InputBundle& bundle, const OutputMix& mix,
                                       const Technology& tech)
{
    const std::vector<double> costs = unit_costs_from_allocation(cost_based_value_added(prices, bundle), mix);
    return make_measured(cost_weighted_output(mix, costs), evaluate(tech, bundle), Convention::CostWeightedIndex);
}

Proposition1Report verify_proposition1(const FactorPrices& prices, const InputBundle& bundle, const OutputMix& mix,
                                       double relative_tolerance)
{
    const double total_cost = cost_based_value_added(prices, bundle);
    const double lhs = cost_weighted_output(mix, unit_costs_from_allocation(total_cost, mix));
    const double rhs = mix.coverage * total_cost;
    return Proposition1Report{lhs, rhs, std::abs(lhs - rhs) <= relative_tolerance * std::abs(rhs)};
}

double revenue(const PricingScheme& pricing)
{
    validate(pricing);
    double total = 0.0;
    for (const PricedOutput& item : pricing.items) total += (1.0 + item.markup) * item.marginal_cost * item.quantity;
    return total;
}

MeasuredTfp measured_tfp_revenue(const PricingScheme& pricing, const Technology& tech, const InputBundle& bundle)
{
    if (!bundle.intermediates) {
        throw Error(ErrorKind::InvalidParameter, "revenue-based TFP needs a gross-output bundle with intermediates");
    }
    return make_measured(revenue(pricing), evaluate(tech, bundle), Convention::DistortedRevenue);
}

}  // namespace tfpm
