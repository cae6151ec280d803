#include "tfpm/growth_accounting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <tuple>

#include "tfpm/error.hpp"
#include "tfpm/format.hpp"

namespace tfpm {

namespace {

constexpr std::array<std::string_view, 9> kPanelColumns = {
    "year", "country", "industry", "va_nominal", "va_deflator",
    "capital_services", "labor_input", "labor_share", "capital_share",
};

bool same_series(const PanelObservation& a, const PanelObservation& b)
{
    return a.country == b.country && a.industry == b.industry;
}

auto series_order(const PanelObservation& o) { return std::tie(o.country, o.industry, o.year); }

std::vector<std::string> split_csv_line(std::string_view line)
{
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        std::string_view field = trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
        if (field.size() >= 2 && field.front() == '"' && field.back() == '"') field = field.substr(1, field.size() - 2);
        fields.emplace_back(field);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::string row_label(int line) { return "row " + std::to_string(line); }

}  // namespace

std::optional<double> TfpIndexSeries::at(int year) const
{
    for (const IndexPoint& p : points) {
        if (p.year == year) return p.value;
    }
    return std::nullopt;
}

double deflate(double va_nominal, double va_deflator)
{
    if (va_deflator == 0.0) throw Error(ErrorKind::ZeroDeflator, "value-added deflator is zero");
    if (!(std::isfinite(va_deflator) && va_deflator > 0.0)) {
        throw Error(ErrorKind::InvalidParameter, "value-added deflator must be positive");
    }
    return va_nominal / va_deflator;
}

double tornqvist_tfp_growth(const PanelObservation& prev, const PanelObservation& curr)
{
    if (!same_series(prev, curr)) {
        throw Error(ErrorKind::InvalidParameter, "observations belong to different series");
    }
    if (curr.year != prev.year + 1) {
        throw Error(ErrorKind::YearGap, "years " + std::to_string(prev.year) + " and " + std::to_string(curr.year) +
                                            " are not consecutive");
    }
    const double va0 = deflate(prev.va_nominal, prev.va_deflator);
    const double va1 = deflate(curr.va_nominal, curr.va_deflator);
    for (double level : {va0, va1, prev.capital_services, curr.capital_services, prev.labor_input, curr.labor_input}) {
        if (!(level > 0.0)) {
            throw Error(ErrorKind::NonpositiveLevel,
                        "nonpositive level in " + curr.country + "/" + curr.industry + " " + std::to_string(curr.year));
        }
    }
    const double capital_weight = 0.5 * (prev.capital_share + curr.capital_share);
    const double labor_weight = 0.5 * (prev.labor_share + curr.labor_share);
    return std::log(va1 / va0) - capital_weight * std::log(curr.capital_services / prev.capital_services) -
           labor_weight * std::log(curr.labor_input / prev.labor_input);
}

TfpIndexSeries build_index(std::span<const PanelObservation> series, int base_year)
{
    if (series.empty()) throw Error(ErrorKind::InvalidParameter, "cannot index an empty series");

    std::vector<double> log_level(series.size(), 0.0);
    std::optional<std::size_t> base;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (i > 0) {
            if (!same_series(series[i - 1], series[i])) {
                throw Error(ErrorKind::InvalidParameter, "series mixes several country/industry pairs");
            }
            if (series[i].year != series[i - 1].year + 1) {
                throw Error(ErrorKind::YearGap, series[i].country + "/" + series[i].industry + ": year " +
                                                    std::to_string(series[i - 1].year) + " followed by " +
                                                    std::to_string(series[i].year));
            }
            log_level[i] = log_level[i - 1] + tornqvist_tfp_growth(series[i - 1], series[i]);
        }
        if (series[i].year == base_year) base = i;
    }
    if (!base) {
        throw Error(ErrorKind::MissingBaseYear, series.front().country + "/" + series.front().industry +
                                                    ": base year " + std::to_string(base_year) + " not in data");
    }

    TfpIndexSeries index{base_year, {}};
    index.points.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        index.points.push_back({series[i].year, 100.0 * std::exp(log_level[i] - log_level[*base])});
    }
    return index;
}

std::vector<SeriesIndex> build_indices(std::span<const PanelObservation> panel, int base_year)
{
    std::vector<SeriesIndex> out;
    std::size_t start = 0;
    while (start < panel.size()) {
        std::size_t end = start + 1;
        while (end < panel.size() && same_series(panel[start], panel[end])) ++end;
        out.push_back({panel[start].country, panel[start].industry,
                       build_index(panel.subspan(start, end - start), base_year)});
        start = end;
    }
    return out;
}

PanelData ingest_panel(std::istream& in, double share_tolerance)
{
    std::string line;
    int line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (!trim(line).empty()) {
            header = split_csv_line(line);
            break;
        }
    }
    if (header.empty()) throw Error(ErrorKind::Schema, "panel file has no header row");

    std::array<int, kPanelColumns.size()> column_of{};
    column_of.fill(-1);
    for (std::size_t c = 0; c < header.size(); ++c) {
        const auto it = std::find(kPanelColumns.begin(), kPanelColumns.end(), header[c]);
        if (it == kPanelColumns.end()) {
            throw Error(ErrorKind::Schema, "unknown column '" + header[c] + "' in header");
        }
        const auto k = static_cast<std::size_t>(it - kPanelColumns.begin());
        if (column_of[k] != -1) throw Error(ErrorKind::Schema, "duplicate column '" + header[c] + "' in header");
        column_of[k] = static_cast<int>(c);
    }
    for (std::size_t k = 0; k < kPanelColumns.size(); ++k) {
        if (column_of[k] == -1) {
            throw Error(ErrorKind::Schema, "missing column '" + std::string(kPanelColumns[k]) + "'");
        }
    }

    PanelData data;
    std::vector<std::string> problems;
    std::vector<int> row_line;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            problems.push_back(row_label(line_no) + ": expected " + std::to_string(header.size()) + " fields, got " +
                               std::to_string(fields.size()));
            continue;
        }
        auto field = [&](std::size_t k) -> const std::string& { return fields[static_cast<std::size_t>(column_of[k])]; };
        bool row_ok = true;
        auto number = [&](std::size_t k, double& out) {
            if (!parse_number(field(k), out)) {
                problems.push_back(row_label(line_no) + ", column " + std::string(kPanelColumns[k]) +
                                   ": not a number '" + field(k) + "'");
                row_ok = false;
            }
        };

        PanelObservation obs;
        if (!parse_integer(field(0), obs.year)) {
            problems.push_back(row_label(line_no) + ", column year: not an integer '" + field(0) + "'");
            row_ok = false;
        }
        obs.country = field(1);
        obs.industry = field(2);
        if (obs.country.empty() || obs.industry.empty()) {
            problems.push_back(row_label(line_no) + ": country and industry must be non-empty");
            row_ok = false;
        }
        number(3, obs.va_nominal);
        number(4, obs.va_deflator);
        number(5, obs.capital_services);
        number(6, obs.labor_input);
        number(7, obs.labor_share);
        number(8, obs.capital_share);
        if (!row_ok) continue;

        auto invariant = [&](bool ok, const std::string& what) {
            if (!ok) {
                problems.push_back(row_label(line_no) + ": " + what);
                row_ok = false;
            }
        };
        invariant(obs.va_deflator > 0.0, "va_deflator must be positive");
        invariant(obs.capital_services > 0.0, "capital_services must be positive");
        invariant(obs.labor_input > 0.0, "labor_input must be positive");
        invariant(obs.labor_share >= 0.0 && obs.labor_share <= 1.0, "labor_share must lie in [0, 1]");
        invariant(obs.capital_share >= 0.0 && obs.capital_share <= 1.0, "capital_share must lie in [0, 1]");
        const double share_sum = obs.labor_share + obs.capital_share;
        invariant(share_sum > 0.0, "factor shares sum to zero");
        if (!row_ok) continue;
        if (std::abs(share_sum - 1.0) > share_tolerance) {
            obs.labor_share /= share_sum;
            obs.capital_share /= share_sum;
            data.warnings.push_back(row_label(line_no) + ": factor shares sum to " + format_number(share_sum) +
                                    "; renormalized");
        }
        data.observations.push_back(std::move(obs));
        row_line.push_back(line_no);
    }

    // Sort a permutation so duplicate diagnostics can name both rows.
    std::vector<std::size_t> order(data.observations.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return series_order(data.observations[a]) < series_order(data.observations[b]);
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
        const PanelObservation& a = data.observations[order[i - 1]];
        const PanelObservation& b = data.observations[order[i]];
        if (series_order(a) == series_order(b)) {
            problems.push_back(row_label(row_line[order[i]]) + ": duplicate " + b.country + "/" + b.industry + " " +
                               std::to_string(b.year) + " (first at " + row_label(row_line[order[i - 1]]) + ")");
        }
    }
    if (!problems.empty()) {
        std::ostringstream msg;
        msg << "panel has " << problems.size() << " invalid row(s):";
        for (const std::string& p : problems) msg << "\n  " << p;
        throw Error(ErrorKind::Schema, msg.str());
    }

    std::vector<PanelObservation> sorted;
    sorted.reserve(order.size());
    for (std::size_t i : order) sorted.push_back(std::move(data.observations[i]));
    data.observations = std::move(sorted);
    return data;
}

PanelData ingest_panel(const std::filesystem::path& path, double share_tolerance)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open panel file " + path.string());
    return ingest_panel(in, share_tolerance);
}

void write_panel(std::ostream& out, std::span<const PanelObservation> panel)
{
    for (std::size_t k = 0; k < kPanelColumns.size(); ++k) out << (k ? "," : "") << kPanelColumns[k];
    out << '\n';
    for (const PanelObservation& o : panel) {
        out << o.year << ',' << o.country << ',' << o.industry << ',' << format_number(o.va_nominal) << ','
            << format_number(o.va_deflator) << ',' << format_number(o.capital_services) << ','
            << format_number(o.labor_input) << ',' << format_number(o.labor_share) << ','
            << format_number(o.capital_share) << '\n';
    }
}

void write_index_file(std::ostream& out, std::span<const SeriesIndex> indices)
{
    out << "year,country,industry,tfp_index\n";
    for (const SeriesIndex& s : indices) {
        for (const IndexPoint& p : s.index.points) {
            out << p.year << ',' << s.country << ',' << s.industry << ',' << format_number(p.value) << '\n';
        }
    }
}

void write_plot_data(std::ostream& out, std::span<const SeriesIndex> indices)
{
    out << "year,series,value\n";
    for (const SeriesIndex& s : indices) {
        for (const IndexPoint& p : s.index.points) {
            out << p.year << ',' << s.country << '/' << s.industry << ',' << format_number(p.value) << '\n';
        }
    }
}

std::vector<PanelObservation> simulate_sna_panel(const SimulationPaths& paths)
{
    const std::size_t n = paths.technology.size();
    if (n == 0) throw Error(ErrorKind::InvalidParameter, "simulation needs at least one year");
    if (paths.inputs.size() != n || paths.prices.size() != n) {
        throw Error(ErrorKind::LengthMismatch, "technology, input and price paths differ in length (" +
                                                   std::to_string(n) + ", " + std::to_string(paths.inputs.size()) +
                                                   ", " + std::to_string(paths.prices.size()) + ")");
    }

    std::vector<PanelObservation> panel;
    panel.reserve(n);
    for (std::size_t t = 0; t < n; ++t) {
        const Technology& tech = paths.technology[t];
        const InputBundle& x = paths.inputs[t];
        if (tech.uses_intermediates()) {
            throw Error(ErrorKind::InvalidTechnology, "panel simulation uses value-added technologies");
        }
        if (!strictly_positive(x, false)) {
            throw Error(ErrorKind::Domain, "simulated inputs must be strictly positive");
        }
        PanelObservation obs;
        obs.year = paths.first_year + static_cast<int>(t);
        obs.country = paths.country;
        obs.industry = paths.industry;
        obs.capital_services = x.capital;
        obs.labor_input = x.labor;

        if (paths.convention == ValueAddedConvention::Sna) {
            const double capital_cost = paths.prices[t].capital_price * x.capital;
            const double cost = input_cost(paths.prices[t], x);
            obs.va_nominal = cost;
            obs.va_deflator = evaluate(tech, x) / evaluate(paths.technology.front(), x);
            obs.capital_share = capital_cost / cost;
            obs.labor_share = 1.0 - obs.capital_share;
        } else {
            validate(paths.prices[t]);
            const MarginalProducts mp = marginal_products(tech, x);
            const double capital_income = mp.capital * x.capital;
            const double labor_income = mp.labor * x.labor;
            obs.va_nominal = evaluate(tech, x);
            obs.va_deflator = 1.0;
            obs.capital_share = capital_income / (capital_income + labor_income);
            obs.labor_share = 1.0 - obs.capital_share;
        }
        panel.push_back(std::move(obs));
    }
    return panel;
}

}  // namespace tfpm
