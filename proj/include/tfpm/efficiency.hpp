#pragma once

// The three productivity channels: technical progress, allocative
// efficiency (cost minimization) and scale efficiency (MPSS).

#include "tfpm/econ_core.hpp"

namespace tfpm {

struct CostMinResult {
    InputBundle bundle;
    double cost;
    double target_output;
};

struct MpssResult {
    double scale_factor;
    InputBundle bundle_at_mpss;
    double ray_average_product;
};

struct SolverSettings {
    double tolerance = 1e-10;
    int max_iterations = 200;
};

// Factor s with evaluate(tech, s * ray) == target_output. Value-added
// technologies only; for the translog the root on the rising branch is used.
double scale_onto_isoquant(const Technology& tech, const InputBundle& ray, double target_output);

CostMinResult min_cost_bundle(const Technology& tech, const FactorPrices& prices, double target_output,
                              const SolverSettings& settings = {});

Technology apply_technical_progress(const Technology& tech, const TechnologyShift& shift);

// f(lambda * ray) / lambda
double ray_average_product(const Technology& tech, const InputBundle& ray, double lambda);

MpssResult find_mpss(const Technology& tech, const InputBundle& ray_bundle, const SolverSettings& settings = {});

// Farrell cost efficiency C_min / C at the bundle's own output; 1 iff the
// bundle is cost minimizing.
double allocative_gap(const Technology& tech, const FactorPrices& prices, const InputBundle& bundle,
                      const SolverSettings& settings = {});

}  // namespace tfpm
