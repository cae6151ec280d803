#include "tfpm/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfpm/error.hpp"
#include "tfpm/format.hpp"

namespace tfpm {

namespace {

constexpr double kLogRatioBound = 50.0;
constexpr double kLogScaleBound = 20.0;
const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

void require_value_added(const Technology& tech, const char* op)
{
    if (tech.uses_intermediates()) {
        throw Error(ErrorKind::InvalidTechnology, std::string(op) + " supports value-added technologies only");
    }
}

double log_ray_average_product(const Technology& tech, const InputBundle& ray, double log_scale)
{
    return std::log(evaluate(tech, scaled(ray, std::exp(log_scale)))) - log_scale;
}

}  // namespace

double scale_onto_isoquant(const Technology& tech, const InputBundle& ray, double target_output)
{
    require_value_added(tech, "scale_onto_isoquant");
    if (!(std::isfinite(target_output) && target_output > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "target output must be positive");
    }
    if (!strictly_positive(ray, false)) {
        throw Error(ErrorKind::Domain, "isoquant scaling requires a strictly positive ray");
    }
    if (const auto* p = std::get_if<TranslogParams>(&tech.params())) {
        // b u + c u^2 = ln(y / A) in u = ln h, taking the root with b + 2cu > 0.
        const double z = std::log(target_output / tech.level());
        const double disc = p->b * p->b + 4.0 * p->c * z;
        if (disc < 0.0) {
            throw Error(ErrorKind::Domain, "target output exceeds the technology's maximum attainable output");
        }
        const double u_target = 2.0 * z / (p->b + std::sqrt(disc));
        const double u_ray = p->a_capital * std::log(ray.capital) + (1.0 - p->a_capital) * std::log(ray.labor);
        return std::exp(u_target - u_ray);
    }
    const double degree = scale_elasticity(tech, ray);
    return std::pow(target_output / evaluate(tech, ray), 1.0 / degree);
}

CostMinResult min_cost_bundle(const Technology& tech, const FactorPrices& prices, double target_output,
                              const SolverSettings& settings)
{
    require_value_added(tech, "min_cost_bundle");
    validate(prices);
    if (!(std::isfinite(target_output) && target_output > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "target output must be positive");
    }
    const double log_price_ratio = std::log(prices.capital_price / prices.wage);

    double ratio = 0.0;  // K / L
    if (const auto* p = std::get_if<CobbDouglasParams>(&tech.params())) {
        ratio = (p->a_capital * prices.wage) / (p->a_labor * prices.capital_price);
    } else {
        // ln MRTS(e^t, 1) is strictly decreasing in t for convex isoquants.
        auto foc = [&](double t) { return std::log(mrts(tech, InputBundle{std::exp(t), 1.0, {}})) - log_price_ratio; };
        double lo = -kLogRatioBound;
        double hi = kLogRatioBound;
        const double f_lo = foc(lo);
        const double f_hi = foc(hi);
        if (!(f_lo > 0.0 && f_hi < 0.0)) {
            throw Error(ErrorKind::InvalidTechnology,
                        "first-order condition is not bracketed; isoquants are not strictly convex here");
        }
        int iter = 0;
        while (hi - lo > settings.tolerance) {
            if (++iter > settings.max_iterations) {
                throw Error(ErrorKind::NoConvergence, "cost minimization did not converge");
            }
            const double mid = 0.5 * (lo + hi);
            (foc(mid) > 0.0 ? lo : hi) = mid;
        }
        ratio = std::exp(0.5 * (lo + hi));
    }

    const InputBundle ray{ratio, 1.0, {}};
    const InputBundle bundle = scaled(ray, scale_onto_isoquant(tech, ray, target_output));
    return CostMinResult{bundle, input_cost(prices, bundle), target_output};
}

Technology apply_technical_progress(const Technology& tech, const TechnologyShift& shift)
{
    if (!(std::isfinite(shift.factor) && shift.factor > 1.0)) {
        throw Error(ErrorKind::InvalidShift, "technology shift factor must exceed 1, got " + format_number(shift.factor));
    }
    return tech.with_level(tech.level() * shift.factor);
}

double ray_average_product(const Technology& tech, const InputBundle& ray, double lambda)
{
    if (!(std::isfinite(lambda) && lambda > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "scale factor must be positive");
    }
    return evaluate(tech, scaled(ray, lambda)) / lambda;
}

MpssResult find_mpss(const Technology& tech, const InputBundle& ray_bundle, const SolverSettings& settings)
{
    validate(ray_bundle);
    if (!strictly_positive(ray_bundle, tech.uses_intermediates())) {
        throw Error(ErrorKind::Domain, "find_mpss requires a strictly positive ray");
    }
    auto elasticity_at = [&](double t) { return scale_elasticity(tech, scaled(ray_bundle, std::exp(t))); };
    if (!(elasticity_at(-kLogScaleBound) > 1.0 && elasticity_at(kLogScaleBound) < 1.0)) {
        throw Error(ErrorKind::NoInteriorMpss, "no interior most productive scale size along this ray");
    }

    // Golden section on ln(lambda); ties keep the left bracket.
    auto objective = [&](double t) { return log_ray_average_product(tech, ray_bundle, t); };
    double a = -kLogScaleBound;
    double b = kLogScaleBound;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    int iter = 0;
    while (b - a > settings.tolerance) {
        if (++iter > settings.max_iterations) {
            throw Error(ErrorKind::NoConvergence, "MPSS search did not converge");
        }
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = objective(d);
        }
    }
    double t_star = 0.5 * (a + b);

    // The objective is flat to O(dt^2) at the optimum, so golden section alone
    // resolves ln(lambda) only to ~sqrt(eps). Polish on the stationarity
    // condition, which crosses zero linearly.
    double lo = t_star - 1e-4;
    double hi = t_star + 1e-4;
    if (elasticity_at(lo) - 1.0 > 0.0 && elasticity_at(hi) - 1.0 < 0.0) {
        for (int i = 0; i < settings.max_iterations && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (elasticity_at(mid) - 1.0 > 0.0 ? lo : hi) = mid;
        }
        t_star = 0.5 * (lo + hi);
    }

    const double lambda = std::exp(t_star);
    const InputBundle at_mpss = scaled(ray_bundle, lambda);
    return MpssResult{lambda, at_mpss, evaluate(tech, at_mpss) / lambda};
}

double allocative_gap(const Technology& tech, const FactorPrices& prices, const InputBundle& bundle,
                      const SolverSettings& settings)
{
    if (!strictly_positive(bundle, false)) {
        throw Error(ErrorKind::Domain, "allocative_gap requires a strictly positive bundle");
    }
    const double cost = input_cost(prices, bundle);
    const double target = evaluate(tech, bundle);
    const double min_cost = min_cost_bundle(tech, prices, target, settings).cost;
    return std::min(1.0, min_cost / cost);
}

}  // namespace tfpm
