#include "tfpm/econ_core.hpp"

#include <cmath>
#include <string>

#include "tfpm/error.hpp"
#include "tfpm/format.hpp"

namespace tfpm {

namespace {

bool finite_nonnegative(double x) { return std::isfinite(x) && x >= 0.0; }
bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

void require(bool ok, ErrorKind kind, const std::string& what)
{
    if (!ok) throw Error(kind, what);
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_level(double level)
{
    require(finite_positive(level), ErrorKind::InvalidParameter,
            "technology level must be positive and finite, got " + format_number(level));
}

double intermediates_of(const Technology& tech, const InputBundle& bundle)
{
    if (!tech.uses_intermediates()) return 0.0;
    require(bundle.intermediates.has_value(), ErrorKind::InvalidParameter,
            "gross-output technology requires an intermediate input");
    return *bundle.intermediates;
}

void require_positive_bundle(const Technology& tech, const InputBundle& bundle, const char* op)
{
    validate(bundle);
    intermediates_of(tech, bundle);
    require(strictly_positive(bundle, tech.uses_intermediates()), ErrorKind::Domain,
            std::string(op) + " requires strictly positive inputs");
}

double translog_log_core(const TranslogParams& p, const InputBundle& bundle, double m)
{
    double log_h = p.a_capital * std::log(bundle.capital) +
                   (1.0 - p.a_capital - p.a_intermediates) * std::log(bundle.labor);
    if (p.a_intermediates > 0.0) log_h += p.a_intermediates * std::log(m);
    return log_h;
}

}  // namespace

void validate(const InputBundle& bundle)
{
    require(finite_nonnegative(bundle.capital), ErrorKind::InvalidParameter,
            "capital must be nonnegative and finite");
    require(finite_nonnegative(bundle.labor), ErrorKind::InvalidParameter,
            "labor must be nonnegative and finite");
    if (bundle.intermediates) {
        require(finite_nonnegative(*bundle.intermediates), ErrorKind::InvalidParameter,
                "intermediates must be nonnegative and finite");
    }
}

void validate(const FactorPrices& prices)
{
    require(finite_positive(prices.capital_price), ErrorKind::InvalidParameter,
            "capital price must be positive and finite");
    require(finite_positive(prices.wage), ErrorKind::InvalidParameter,
            "wage must be positive and finite");
    if (prices.intermediates_price) {
        require(finite_positive(*prices.intermediates_price), ErrorKind::InvalidParameter,
                "intermediates price must be positive and finite");
    }
}

bool strictly_positive(const InputBundle& bundle, bool with_intermediates)
{
    if (!(bundle.capital > 0.0 && bundle.labor > 0.0)) return false;
    if (with_intermediates) return bundle.intermediates && *bundle.intermediates > 0.0;
    return true;
}

InputBundle scaled(const InputBundle& bundle, double factor)
{
    InputBundle out{bundle.capital * factor, bundle.labor * factor, bundle.intermediates};
    if (out.intermediates) *out.intermediates *= factor;
    return out;
}

double input_cost(const FactorPrices& prices, const InputBundle& bundle)
{
    validate(prices);
    validate(bundle);
    return prices.capital_price * bundle.capital + prices.wage * bundle.labor;
}

std::string_view to_string(Family family)
{
    switch (family) {
    case Family::CobbDouglas: return "cobb-douglas";
    case Family::Ces: return "ces";
    case Family::HomotheticTranslog: return "translog";
    }
    return "unknown";
}

Technology::Technology(FamilyParams params, double level) : params_(params), level_(level) {}

Technology Technology::cobb_douglas(double a_capital, double a_labor, double level, double a_intermediates)
{
    check_level(level);
    require(finite_positive(a_capital) && finite_positive(a_labor), ErrorKind::InvalidParameter,
            "Cobb-Douglas exponents must be positive");
    require(finite_nonnegative(a_intermediates), ErrorKind::InvalidParameter,
            "Cobb-Douglas intermediates exponent must be nonnegative");
    return Technology(CobbDouglasParams{a_capital, a_labor, a_intermediates}, level);
}

Technology Technology::ces(double delta, double rho, double nu, double level)
{
    return ces_gross_output(delta, rho, nu, 0.0, rho, level);
}

Technology Technology::ces_gross_output(double delta, double rho, double nu, double delta_intermediates,
                                        double rho_intermediates, double level)
{
    check_level(level);
    require(std::isfinite(delta) && delta > 0.0 && delta < 1.0, ErrorKind::InvalidParameter,
            "CES distribution share must lie in (0, 1)");
    require(std::isfinite(rho) && rho < 1.0 && rho != 0.0, ErrorKind::InvalidParameter,
            "CES substitution parameter must lie in (-inf, 1) excluding 0");
    require(finite_positive(nu), ErrorKind::InvalidParameter, "CES scale degree must be positive");
    require(std::isfinite(delta_intermediates) && delta_intermediates >= 0.0 && delta_intermediates < 1.0,
            ErrorKind::InvalidParameter, "CES intermediates share must lie in [0, 1)");
    if (delta_intermediates > 0.0) {
        require(std::isfinite(rho_intermediates) && rho_intermediates < 1.0 && rho_intermediates != 0.0,
                ErrorKind::InvalidParameter,
                "CES outer substitution parameter must lie in (-inf, 1) excluding 0");
    } else {
        rho_intermediates = rho;
    }
    return Technology(CesParams{delta, rho, nu, delta_intermediates, rho_intermediates}, level);
}

Technology Technology::homothetic_translog(double a_capital, double b, double c, double level,
                                           double a_intermediates)
{
    check_level(level);
    require(std::isfinite(a_capital) && a_capital > 0.0 && a_capital < 1.0, ErrorKind::InvalidParameter,
            "translog inner capital exponent must lie in (0, 1)");
    require(finite_nonnegative(a_intermediates) && a_capital + a_intermediates < 1.0,
            ErrorKind::InvalidParameter, "translog inner exponents must leave a positive labor exponent");
    require(finite_positive(b), ErrorKind::InvalidParameter, "translog b must be positive");
    require(std::isfinite(c) && c <= 0.0, ErrorKind::InvalidParameter, "translog c must be nonpositive");
    return Technology(TranslogParams{a_capital, b, c, a_intermediates}, level);
}

Family Technology::family() const
{
    return std::visit(Overloaded{
                          [](const CobbDouglasParams&) { return Family::CobbDouglas; },
                          [](const CesParams&) { return Family::Ces; },
                          [](const TranslogParams&) { return Family::HomotheticTranslog; },
                      },
                      params_);
}

bool Technology::uses_intermediates() const
{
    return std::visit(Overloaded{
                          [](const CobbDouglasParams& p) { return p.a_intermediates > 0.0; },
                          [](const CesParams& p) { return p.delta_intermediates > 0.0; },
                          [](const TranslogParams& p) { return p.a_intermediates > 0.0; },
                      },
                      params_);
}

Technology Technology::with_level(double level) const
{
    check_level(level);
    return Technology(params_, level);
}

double evaluate(const Technology& tech, const InputBundle& bundle)
{
    validate(bundle);
    require(bundle.capital > 0.0 || bundle.labor > 0.0, ErrorKind::Domain,
            "capital and labor cannot both be zero");
    const double m = intermediates_of(tech, bundle);
    const double k = bundle.capital;
    const double l = bundle.labor;

    const double core = std::visit(
        Overloaded{
            [&](const CobbDouglasParams& p) {
                double f = std::pow(k, p.a_capital) * std::pow(l, p.a_labor);
                if (p.a_intermediates > 0.0) f *= std::pow(m, p.a_intermediates);
                return f;
            },
            [&](const CesParams& p) {
                if (p.rho < 0.0 && (k == 0.0 || l == 0.0)) return 0.0;
                const double inner = std::pow(p.delta * std::pow(k, p.rho) + (1.0 - p.delta) * std::pow(l, p.rho),
                                              1.0 / p.rho);
                if (p.delta_intermediates == 0.0) return std::pow(inner, p.nu);
                const double rm = p.rho_intermediates;
                if (rm < 0.0 && (inner == 0.0 || m == 0.0)) return 0.0;
                const double outer = (1.0 - p.delta_intermediates) * std::pow(inner, rm) +
                                     p.delta_intermediates * std::pow(m, rm);
                return std::pow(outer, p.nu / rm);
            },
            [&](const TranslogParams& p) {
                if (k == 0.0 || l == 0.0 || (p.a_intermediates > 0.0 && m == 0.0)) return 0.0;
                const double log_h = translog_log_core(p, bundle, m);
                return std::exp(p.b * log_h + p.c * log_h * log_h);
            },
        },
        tech.params());
    return tech.level() * core;
}

MarginalProducts marginal_products(const Technology& tech, const InputBundle& bundle)
{
    require_positive_bundle(tech, bundle, "marginal_products");
    const double f = evaluate(tech, bundle);
    const double k = bundle.capital;
    const double l = bundle.labor;
    const double m = intermediates_of(tech, bundle);

    return std::visit(
        Overloaded{
            [&](const CobbDouglasParams& p) {
                MarginalProducts mp{p.a_capital * f / k, p.a_labor * f / l, std::nullopt};
                if (p.a_intermediates > 0.0) mp.intermediates = p.a_intermediates * f / m;
                return mp;
            },
            [&](const CesParams& p) {
                const double inner = std::pow(p.delta * std::pow(k, p.rho) + (1.0 - p.delta) * std::pow(l, p.rho),
                                              1.0 / p.rho);
                const double dv_dk = p.delta * std::pow(inner / k, 1.0 - p.rho);
                const double dv_dl = (1.0 - p.delta) * std::pow(inner / l, 1.0 - p.rho);
                if (p.delta_intermediates == 0.0) {
                    const double df_dv = p.nu * f / inner;
                    return MarginalProducts{df_dv * dv_dk, df_dv * dv_dl, std::nullopt};
                }
                const double rm = p.rho_intermediates;
                const double outer = std::pow((1.0 - p.delta_intermediates) * std::pow(inner, rm) +
                                                  p.delta_intermediates * std::pow(m, rm),
                                              1.0 / rm);
                const double df_dg = p.nu * f / outer;
                const double dg_dv = (1.0 - p.delta_intermediates) * std::pow(outer / inner, 1.0 - rm);
                const double dg_dm = p.delta_intermediates * std::pow(outer / m, 1.0 - rm);
                return MarginalProducts{df_dg * dg_dv * dv_dk, df_dg * dg_dv * dv_dl, df_dg * dg_dm};
            },
            [&](const TranslogParams& p) {
                const double log_h = translog_log_core(p, bundle, m);
                const double elasticity = p.b + 2.0 * p.c * log_h;
                const double a_labor = 1.0 - p.a_capital - p.a_intermediates;
                MarginalProducts mp{f * elasticity * p.a_capital / k, f * elasticity * a_labor / l, std::nullopt};
                if (p.a_intermediates > 0.0) mp.intermediates = f * elasticity * p.a_intermediates / m;
                return mp;
            },
        },
        tech.params());
}

double mrts(const Technology& tech, const InputBundle& bundle)
{
    const MarginalProducts mp = marginal_products(tech, bundle);
    return mp.capital / mp.labor;
}

double scale_elasticity(const Technology& tech, const InputBundle& bundle)
{
    require_positive_bundle(tech, bundle, "scale_elasticity");
    const double m = intermediates_of(tech, bundle);
    return std::visit(Overloaded{
                          [](const CobbDouglasParams& p) { return p.a_capital + p.a_labor + p.a_intermediates; },
                          [](const CesParams& p) { return p.nu; },
                          [&](const TranslogParams& p) {
                              return p.b + 2.0 * p.c * translog_log_core(p, bundle, m);
                          },
                      },
                      tech.params());
}

double true_tfp(double observed_output, const Technology& tech, const InputBundle& bundle)
{
    require(finite_positive(observed_output), ErrorKind::InvalidParameter, "observed output must be positive");
    const double frontier = evaluate(tech.with_level(1.0), bundle);
    require(frontier > 0.0, ErrorKind::Domain, "production function evaluates to zero");
    return observed_output / frontier;
}

}  // namespace tfpm
