#pragma once

// Production technologies and the primitive quantities derived from them.

#include <optional>
#include <string_view>
#include <variant>

namespace tfpm {

struct InputBundle {
    double capital = 0.0;                 // K, real capital services
    double labor = 0.0;                   // L, hours or headcount
    std::optional<double> intermediates;  // M, gross-output technologies only
};

struct FactorPrices {
    double capital_price = 1.0;  // r
    double wage = 1.0;           // w
    std::optional<double> intermediates_price;
};

void validate(const InputBundle& bundle);
void validate(const FactorPrices& prices);

// Every input the technology uses is strictly positive.
bool strictly_positive(const InputBundle& bundle, bool with_intermediates);

InputBundle scaled(const InputBundle& bundle, double factor);

// rK + wL; intermediates are excluded.
double input_cost(const FactorPrices& prices, const InputBundle& bundle);

enum class Family { CobbDouglas, Ces, HomotheticTranslog };

std::string_view to_string(Family family);

struct CobbDouglasParams {
    double a_capital;
    double a_labor;
    double a_intermediates = 0.0;

    bool operator==(const CobbDouglasParams&) const = default;
};

// Two-level nest: V = [delta K^rho + (1-delta) L^rho]^(1/rho), then
// f = A [(1-delta_m) V^rho_m + delta_m M^rho_m]^(nu/rho_m).
// delta_m = 0 is the value-added CES.
struct CesParams {
    double delta;
    double rho;
    double nu;
    double delta_intermediates = 0.0;
    double rho_intermediates = 0.0;

    bool operator==(const CesParams&) const = default;
};

// f = A exp(b ln h + c (ln h)^2), h = K^a_k L^(1-a_k-a_m) M^a_m.
struct TranslogParams {
    double a_capital;
    double b;
    double c;
    double a_intermediates = 0.0;

    bool operator==(const TranslogParams&) const = default;
};

using FamilyParams = std::variant<CobbDouglasParams, CesParams, TranslogParams>;

class Technology {
public:
    static Technology cobb_douglas(double a_capital, double a_labor, double level = 1.0,
                                   double a_intermediates = 0.0);
    static Technology ces(double delta, double rho, double nu, double level = 1.0);
    static Technology ces_gross_output(double delta, double rho, double nu, double delta_intermediates,
                                       double rho_intermediates, double level = 1.0);
    static Technology homothetic_translog(double a_capital, double b, double c, double level = 1.0,
                                          double a_intermediates = 0.0);

    Family family() const;
    double level() const { return level_; }
    const FamilyParams& params() const { return params_; }
    bool uses_intermediates() const;

    Technology with_level(double level) const;

    friend bool operator==(const Technology&, const Technology&) = default;

private:
    Technology(FamilyParams params, double level);

    FamilyParams params_;
    double level_;
};

// Hicks-neutral multiplicative improvement of the technology level.
struct TechnologyShift {
    double factor = 1.0;
};

struct MarginalProducts {
    double capital;
    double labor;
    std::optional<double> intermediates;
};

// Maximum attainable output, including the Hicks-neutral level.
double evaluate(const Technology& tech, const InputBundle& bundle);

MarginalProducts marginal_products(const Technology& tech, const InputBundle& bundle);

double mrts(const Technology& tech, const InputBundle& bundle);

// d ln f(lambda x) / d ln lambda at lambda = 1, all used inputs scaled together.
double scale_elasticity(const Technology& tech, const InputBundle& bundle);

// Solow residual Y / f(K, L) with the technology level forced to 1.
double true_tfp(double observed_output, const Technology& tech, const InputBundle& bundle);

}  // namespace tfpm
