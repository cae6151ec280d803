#pragma once

// Measured-TFP conventions for sectors without reliable output prices.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tfpm/econ_core.hpp"

namespace tfpm {

struct OutputItem {
    double quantity;    // y_i
    double cost_share;  // alpha_i
};

// Cost-allocation over observed outputs. Shares sum to `coverage`; coverage 1
// is exhaustive allocation.
struct OutputMix {
    std::vector<OutputItem> outputs;
    double coverage = 1.0;
};

void validate(const OutputMix& mix);

struct PricedOutput {
    double marginal_cost;  // MC_i, real
    double markup;         // mu_i > -1
    double quantity;       // y_i
};

struct PricingScheme {
    std::vector<PricedOutput> items;
};

void validate(const PricingScheme& pricing);

enum class Convention { CostBasedVA, CostWeightedIndex, DistortedRevenue };

std::string_view to_string(Convention convention);
std::optional<Convention> convention_from_string(std::string_view name);

struct MeasuredTfp {
    double value;
    Convention convention;
    double numerator;
    double denominator;
};

// Y-hat = rK + wL.
double cost_based_value_added(const FactorPrices& prices, const InputBundle& bundle);

// (rK + wL) / f(K, L)
MeasuredTfp measured_tfp_cost_based(const FactorPrices& prices, const InputBundle& bundle, const Technology& tech);

// c_i = alpha_i * C / y_i
std::vector<double> unit_costs_from_allocation(double total_cost, const OutputMix& mix);

// Y-tilde = sum_i c_i y_i
double cost_weighted_output(const OutputMix& mix, std::span<const double> unit_costs);

MeasuredTfp measured_tfp_cost_weighted(const FactorPrices& prices, const InputBundle& bundle, const OutputMix& mix,
                                       const Technology& tech);

struct Proposition1Report {
    double lhs;  // Y-tilde
    double rhs;  // coverage * (rK + wL)
    bool equal;
};

Proposition1Report verify_proposition1(const FactorPrices& prices, const InputBundle& bundle, const OutputMix& mix,
                                       double relative_tolerance = 1e-12);

// R = sum_i (1 + mu_i) MC_i y_i
double revenue(const PricingScheme& pricing);

// R / f(K, L, M)
MeasuredTfp measured_tfp_revenue(const PricingScheme& pricing, const Technology& tech, const InputBundle& bundle);

}  // namespace tfpm
