#pragma once

// Industry-panel growth accounting: Tornqvist TFP residuals, base-year
// rebased indices, panel CSV ingestion and synthetic SNA panels.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tfpm/econ_core.hpp"

namespace tfpm {

struct PanelObservation {
    int year = 0;
    std::string country;
    std::string industry;
    double va_nominal = 0.0;
    double va_deflator = 1.0;
    double capital_services = 0.0;
    double labor_input = 0.0;
    double labor_share = 0.0;
    double capital_share = 0.0;
};

struct IndexPoint {
    int year;
    double value;
};

struct TfpIndexSeries {
    int base_year = 0;
    std::vector<IndexPoint> points;

    std::optional<double> at(int year) const;
};

double deflate(double va_nominal, double va_deflator);

// dln TFP = dln(real VA) - sK * dln K - sL * dln L with two-period average shares.
double tornqvist_tfp_growth(const PanelObservation& prev, const PanelObservation& curr);

// Cumulated residuals rebased so the base year is exactly 100. The series
// must be one (country, industry), sorted, with consecutive years.
TfpIndexSeries build_index(std::span<const PanelObservation> series, int base_year);

struct SeriesIndex {
    std::string country;
    std::string industry;
    TfpIndexSeries index;
};

// Splits a sorted panel by (country, industry) and indexes each series.
std::vector<SeriesIndex> build_indices(std::span<const PanelObservation> panel, int base_year);

struct PanelData {
    std::vector<PanelObservation> observations;  // sorted by country, industry, year
    std::vector<std::string> warnings;
};

inline constexpr double kShareSumTolerance = 1e-6;

PanelData ingest_panel(std::istream& in, double share_tolerance = kShareSumTolerance);
PanelData ingest_panel(const std::filesystem::path& path, double share_tolerance = kShareSumTolerance);

void write_panel(std::ostream& out, std::span<const PanelObservation> panel);
void write_index_file(std::ostream& out, std::span<const SeriesIndex> indices);
// Long format: year, series label "country/industry", value.
void write_plot_data(std::ostream& out, std::span<const SeriesIndex> indices);

enum class ValueAddedConvention {
    // va_nominal = rK + wL, cost shares. The deflator is the frontier-shift
    // index f_t(x_t) / f_first(x_t), so real value added is cost measured in
    // first-year frontier units and the residual tracks (rK + wL) / f.
    Sna,
    // va_nominal = f_t(x_t), deflator 1, competitive (marginal-product) shares.
    Market,
};

struct SimulationPaths {
    std::string country = "SIM";
    std::string industry = "SIM";
    int first_year = 1995;
    ValueAddedConvention convention = ValueAddedConvention::Sna;
    std::vector<Technology> technology;
    std::vector<InputBundle> inputs;
    std::vector<FactorPrices> prices;
};

std::vector<PanelObservation> simulate_sna_panel(const SimulationPaths& paths);

}  // namespace tfpm
