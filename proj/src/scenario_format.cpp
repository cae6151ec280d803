#include "tfpm/scenario_format.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>

#include "tfpm/error.hpp"
#include "tfpm/format.hpp"

namespace tfpm {

namespace {

[[noreturn]] void parse_error(const std::string& message) { throw Error(ErrorKind::Parse, message); }

std::string at_line(int line, const std::string& message) { return "line " + std::to_string(line) + ": " + message; }

// Drops whitespace around '=' and ',' so "mc = 1, 2" tokenizes like "mc=1,2".
std::string normalize_literal(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch == ' ' || ch == '\t') {
            std::size_t j = i;
            while (j < text.size() && (text[j] == ' ' || text[j] == '\t')) ++j;
            const bool next_sep = j < text.size() && (text[j] == '=' || text[j] == ',');
            const bool prev_sep = !out.empty() && (out.back() == '=' || out.back() == ',');
            if (!next_sep && !prev_sep && !out.empty() && j < text.size()) out.push_back(' ');
            i = j - 1;
        } else {
            out.push_back(ch);
        }
    }
    return out;
}

std::vector<std::string> split(std::string_view text, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.emplace_back(trim(text.substr(start, pos == std::string_view::npos ? text.npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

double to_number(std::string_view text, std::string_view what)
{
    double value = 0.0;
    if (!parse_number(text, value)) parse_error(std::string(what) + ": not a number '" + std::string(text) + "'");
    return value;
}

// Literal of form "[head] key=value key=value ...".
struct Literal {
    std::string head;
    std::map<std::string, std::string> fields;
    std::set<std::string> used;

    std::optional<std::string> take(const std::string& key)
    {
        const auto it = fields.find(key);
        if (it == fields.end()) return std::nullopt;
        used.insert(key);
        return it->second;
    }

    double number(const std::string& key, std::string_view context)
    {
        const auto v = take(key);
        if (!v) parse_error(std::string(context) + ": missing '" + key + "'");
        return to_number(*v, key);
    }

    double number_or(const std::string& key, double fallback)
    {
        const auto v = take(key);
        return v ? to_number(*v, key) : fallback;
    }

    void finish(std::string_view context) const
    {
        for (const auto& [key, value] : fields) {
            if (!used.count(key)) parse_error(std::string(context) + ": unknown field '" + key + "'");
        }
    }
};

Literal parse_literal(std::string_view text, bool with_head)
{
    Literal lit;
    const std::vector<std::string> tokens = split(normalize_literal(trim(text)), ' ');
    std::size_t i = 0;
    if (with_head) {
        if (tokens.empty() || tokens[0].empty()) parse_error("empty literal");
        lit.head = tokens[0];
        i = 1;
    }
    for (; i < tokens.size(); ++i) {
        if (tokens[i].empty()) continue;
        const auto eq = tokens[i].find('=');
        if (eq == std::string::npos || eq == 0) parse_error("expected key=value, got '" + tokens[i] + "'");
        const std::string key = tokens[i].substr(0, eq);
        if (!lit.fields.emplace(key, tokens[i].substr(eq + 1)).second) parse_error("duplicate field '" + key + "'");
    }
    return lit;
}

std::vector<double> number_list(std::string_view text, std::string_view what)
{
    std::vector<double> values;
    for (const std::string& part : split(text, ',')) values.push_back(to_number(part, what));
    return values;
}

class SectionReader {
public:
    explicit SectionReader(const Section& section) : section_(section) {}

    const KeyValue* find(std::string_view key)
    {
        for (const KeyValue& kv : section_.entries) {
            if (kv.key == key) {
                used_.insert(kv.key);
                return &kv;
            }
        }
        return nullptr;
    }

    const KeyValue& require(std::string_view key)
    {
        const KeyValue* kv = find(key);
        if (!kv) parse_error(at_line(section_.line, "missing key '" + std::string(key) + "'"));
        return *kv;
    }

    // Applies a parser to a key's value, prefixing errors with its line.
    template <class Fn>
    auto parse(std::string_view key, Fn&& fn)
    {
        const KeyValue& kv = require(key);
        try {
            return fn(kv.value);
        } catch (const Error& e) {
            throw Error(e.kind(), at_line(kv.line, std::string(key) + ": " + e.what()));
        }
    }

    void finish() const
    {
        for (const KeyValue& kv : section_.entries) {
            if (!used_.count(kv.key)) parse_error(at_line(kv.line, "unknown key '" + kv.key + "'"));
        }
    }

private:
    const Section& section_;
    std::set<std::string> used_;
};

Scenario build_scenario(const Section& section, int paradox_id, SectionReader& reader)
{
    Scenario scenario{"", "", TechnicalProgressCase{Technology::cobb_douglas(0.5, 0.5), {}, {}, {}}};
    if (const KeyValue* kv = reader.find("name")) scenario.name = kv->value;
    if (const KeyValue* kv = reader.find("description")) scenario.description = kv->value;
    const Technology tech = reader.parse("technology", parse_technology);
    switch (paradox_id) {
    case 1:
        scenario.setup = TechnicalProgressCase{
            tech, reader.parse("bundle", parse_bundle), reader.parse("prices", parse_prices),
            TechnologyShift{reader.parse("shift", [](std::string_view v) { return to_number(v, "shift"); })}};
        break;
    case 2:
        scenario.setup = AllocativeCase{tech, reader.parse("prices", parse_prices), reader.parse("bundle", parse_bundle)};
        break;
    case 3:
        scenario.setup = ScaleCase{tech, reader.parse("prices", parse_prices), reader.parse("bundle", parse_bundle)};
        break;
    case 4:
        scenario.setup = InputPriceCase{tech, reader.parse("bundle", parse_bundle),
                                        reader.parse("prices_before", parse_prices),
                                        reader.parse("prices_after", parse_prices)};
        break;
    case 5:
        scenario.setup = RegulatedPriceCase{tech, reader.parse("bundle", parse_bundle),
                                            reader.parse("pricing_before", parse_pricing),
                                            reader.parse("pricing_after", parse_pricing)};
        break;
    default:
        parse_error(at_line(section.line, "paradox id must be 1..5"));
    }
    reader.finish();
    return scenario;
}

std::vector<double> parse_path(std::string_view text, std::optional<int> years, std::string_view what)
{
    text = trim(text);
    const auto open = text.find('(');
    if (open != std::string_view::npos && text.back() == ')') {
        const std::string fn(trim(text.substr(0, open)));
        const std::vector<double> args = number_list(text.substr(open + 1, text.size() - open - 2), what);
        if (!years) parse_error(std::string(what) + ": generator " + fn + "() needs 'years'");
        std::vector<double> out(static_cast<std::size_t>(*years));
        if (fn == "constant" && args.size() == 1) {
            std::fill(out.begin(), out.end(), args[0]);
        } else if (fn == "geometric" && args.size() == 2) {
            for (std::size_t t = 0; t < out.size(); ++t) out[t] = args[0] * std::pow(args[1], static_cast<double>(t));
        } else if (fn == "linear" && args.size() == 2) {
            for (std::size_t t = 0; t < out.size(); ++t) out[t] = args[0] + args[1] * static_cast<double>(t);
        } else {
            parse_error(std::string(what) + ": unknown generator '" + std::string(text) + "'");
        }
        return out;
    }
    return number_list(text, what);
}

SimulationPaths build_simulation(const Section& section)
{
    SectionReader reader(section);
    SimulationPaths paths;
    if (const KeyValue* kv = reader.find("country")) paths.country = kv->value;
    if (const KeyValue* kv = reader.find("industry")) paths.industry = kv->value;
    if (const KeyValue* kv = reader.find("first_year")) {
        if (!parse_integer(kv->value, paths.first_year)) parse_error(at_line(kv->line, "first_year must be an integer"));
    }
    std::optional<int> years;
    if (const KeyValue* kv = reader.find("years")) {
        int n = 0;
        if (!parse_integer(kv->value, n) || n < 1) parse_error(at_line(kv->line, "years must be a positive integer"));
        years = n;
    }
    if (const KeyValue* kv = reader.find("convention")) {
        if (kv->value == "sna") {
            paths.convention = ValueAddedConvention::Sna;
        } else if (kv->value == "market") {
            paths.convention = ValueAddedConvention::Market;
        } else {
            parse_error(at_line(kv->line, "convention must be 'sna' or 'market'"));
        }
    }
    const Technology base = reader.parse("technology", parse_technology);

    auto path_of = [&](std::string_view key, std::optional<double> fallback) {
        if (!reader.find(key) && fallback) {
            if (!years) parse_error(at_line(section.line, std::string(key) + " defaults to a constant path and needs 'years'"));
            return std::vector<double>(static_cast<std::size_t>(*years), *fallback);
        }
        return reader.parse(key, [&](std::string_view v) { return parse_path(v, years, key); });
    };
    const std::vector<double> level = path_of("level", base.level());
    const std::vector<double> capital = path_of("capital", std::nullopt);
    const std::vector<double> labor = path_of("labor", std::nullopt);
    const std::vector<double> capital_price = path_of("capital_price", std::nullopt);
    const std::vector<double> wage = path_of("wage", std::nullopt);
    reader.finish();

    const std::size_t n = years ? static_cast<std::size_t>(*years) : level.size();
    for (const auto* p : {&level, &capital, &labor, &capital_price, &wage}) {
        if (p->size() != n) {
            throw Error(ErrorKind::LengthMismatch,
                        at_line(section.line, "trajectory lengths differ (expected " + std::to_string(n) + ", got " +
                                                  std::to_string(p->size()) + ")"));
        }
    }
    for (std::size_t t = 0; t < n; ++t) {
        paths.technology.push_back(base.with_level(level[t]));
        paths.inputs.push_back(InputBundle{capital[t], labor[t], {}});
        paths.prices.push_back(FactorPrices{capital_price[t], wage[t], {}});
        validate(paths.inputs.back());
        validate(paths.prices.back());
    }
    return paths;
}

std::ifstream open_input(const std::filesystem::path& path, std::string_view what)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + std::string(what) + " " + path.string());
    return in;
}

}  // namespace

std::vector<Section> parse_sections(std::istream& in)
{
    std::vector<Section> sections;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') parse_error(at_line(line_no, "unterminated section header"));
            sections.push_back(Section{std::string(trim(line.substr(1, line.size() - 2))), line_no, {}});
            continue;
        }
        if (sections.empty()) parse_error(at_line(line_no, "key outside of any section"));
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) parse_error(at_line(line_no, "expected 'key = value'"));
        KeyValue kv{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), line_no};
        if (kv.key.empty()) parse_error(at_line(line_no, "empty key"));
        for (const KeyValue& existing : sections.back().entries) {
            if (existing.key == kv.key) parse_error(at_line(line_no, "duplicate key '" + kv.key + "'"));
        }
        sections.back().entries.push_back(std::move(kv));
    }
    return sections;
}

Technology parse_technology(std::string_view text)
{
    Literal lit = parse_literal(text, true);
    const std::string context = "technology '" + lit.head + "'";
    const double level = lit.number_or("level", 1.0);
    std::optional<Technology> tech;
    if (lit.head == "cobb-douglas") {
        tech = Technology::cobb_douglas(lit.number("a_k", context), lit.number("a_l", context), level,
                                        lit.number_or("a_m", 0.0));
    } else if (lit.head == "ces") {
        const double delta = lit.number("delta", context);
        const double rho = lit.number("rho", context);
        const double nu = lit.number("nu", context);
        const double delta_m = lit.number_or("delta_m", 0.0);
        tech = Technology::ces_gross_output(delta, rho, nu, delta_m, lit.number_or("rho_m", rho), level);
    } else if (lit.head == "translog") {
        tech = Technology::homothetic_translog(lit.number("a_k", context), lit.number("b", context),
                                               lit.number("c", context), level, lit.number_or("a_m", 0.0));
    } else {
        parse_error("unknown technology family '" + lit.head + "'");
    }
    lit.finish(context);
    return *tech;
}

std::string format_technology(const Technology& tech)
{
    std::string out(to_string(tech.family()));
    auto add = [&](const char* key, double v) { out += std::string(" ") + key + "=" + format_number(v); };
    if (const auto* p = std::get_if<CobbDouglasParams>(&tech.params())) {
        add("a_k", p->a_capital);
        add("a_l", p->a_labor);
        if (p->a_intermediates > 0.0) add("a_m", p->a_intermediates);
    } else if (const auto* p = std::get_if<CesParams>(&tech.params())) {
        add("delta", p->delta);
        add("rho", p->rho);
        add("nu", p->nu);
        if (p->delta_intermediates > 0.0) {
            add("delta_m", p->delta_intermediates);
            add("rho_m", p->rho_intermediates);
        }
    } else if (const auto* p = std::get_if<TranslogParams>(&tech.params())) {
        add("a_k", p->a_capital);
        add("b", p->b);
        add("c", p->c);
        if (p->a_intermediates > 0.0) add("a_m", p->a_intermediates);
    }
    add("level", tech.level());
    return out;
}

InputBundle parse_bundle(std::string_view text)
{
    Literal lit = parse_literal(text, false);
    InputBundle bundle{lit.number("K", "bundle"), lit.number("L", "bundle"), std::nullopt};
    if (auto m = lit.take("M")) bundle.intermediates = to_number(*m, "M");
    lit.finish("bundle");
    validate(bundle);
    return bundle;
}

FactorPrices parse_prices(std::string_view text)
{
    Literal lit = parse_literal(text, false);
    FactorPrices prices{lit.number("r", "prices"), lit.number("w", "prices"), std::nullopt};
    if (auto m = lit.take("m")) prices.intermediates_price = to_number(*m, "m");
    lit.finish("prices");
    validate(prices);
    return prices;
}

PricingScheme parse_pricing(std::string_view text)
{
    Literal lit = parse_literal(text, false);
    auto list = [&](const std::string& key) {
        const auto v = lit.take(key);
        if (!v) parse_error("pricing: missing '" + key + "'");
        return number_list(*v, key);
    };
    const std::vector<double> mc = list("mc");
    const std::vector<double> y = list("y");
    const std::vector<double> markup = list("markup");
    lit.finish("pricing");
    if (mc.size() != y.size() || mc.size() != markup.size()) {
        throw Error(ErrorKind::LengthMismatch, "pricing: mc, y and markup lists differ in length");
    }
    PricingScheme pricing;
    for (std::size_t i = 0; i < mc.size(); ++i) pricing.items.push_back({mc[i], markup[i], y[i]});
    validate(pricing);
    return pricing;
}

std::vector<ScenarioEntry> parse_scenario_file(std::istream& in)
{
    std::vector<ScenarioEntry> entries;
    for (const Section& section : parse_sections(in)) {
        ScenarioEntry entry;
        entry.line = section.line;
        entry.name = "scenario@" + std::to_string(section.line);
        SectionReader reader(section);
        if (const KeyValue* kv = reader.find("name")) entry.name = kv->value;
        try {
            if (section.name != "scenario") {
                parse_error(at_line(section.line, "unknown section [" + section.name + "]"));
            }
            const KeyValue& id_kv = reader.require("paradox");
            int id = 0;
            if (!parse_integer(id_kv.value, id) || id < 1 || id > 5) {
                parse_error(at_line(id_kv.line, "paradox must be an integer in 1..5"));
            }
            entry.paradox_id = id;
            Scenario scenario = build_scenario(section, id, reader);
            if (scenario.name.empty()) scenario.name = entry.name;
            entry.content = std::move(scenario);
        } catch (const Error& e) {
            entry.content = ScenarioFailure{e.kind(), e.what()};
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::vector<ScenarioEntry> load_scenario_file(const std::filesystem::path& path)
{
    std::ifstream in = open_input(path, "scenario file");
    return parse_scenario_file(in);
}

std::vector<SimulationPaths> parse_simulation_file(std::istream& in)
{
    std::vector<SimulationPaths> out;
    for (const Section& section : parse_sections(in)) {
        if (section.name != "simulation") {
            parse_error(at_line(section.line, "unknown section [" + section.name + "]"));
        }
        out.push_back(build_simulation(section));
    }
    return out;
}

std::vector<SimulationPaths> load_simulation_file(const std::filesystem::path& path)
{
    std::ifstream in = open_input(path, "simulation file");
    return parse_simulation_file(in);
}

void write_paradox_report(std::ostream& out, std::span<const ScenarioOutcome> outcomes)
{
    out << "paradox_id,measured_before,measured_after,true_before,true_after,confirmed,welfare_direction,scenario,error\n";
    for (const ScenarioOutcome& o : outcomes) {
        out << (o.paradox_id ? std::to_string(*o.paradox_id) : std::string()) << ',';
        if (const auto* r = std::get_if<ParadoxReport>(&o.result)) {
            out << format_number(r->measured_before) << ',' << format_number(r->measured_after) << ','
                << format_number(r->true_tfp_before) << ',' << format_number(r->true_tfp_after) << ','
                << (r->paradox_confirmed ? "true" : "false") << ',' << to_string(r->welfare_direction) << ','
                << o.name << ",\n";
        } else {
            const auto& f = std::get<ScenarioFailure>(o.result);
            std::string message = f.message;
            std::replace(message.begin(), message.end(), ',', ';');
            std::replace(message.begin(), message.end(), '\n', ' ');
            out << ",,,,,," << o.name << ',' << to_string(f.kind) << ": " << message << '\n';
        }
    }
}

void write_paradox_summary(std::ostream& out, std::span<const ScenarioOutcome> outcomes)
{
    out << "Measured-TFP paradox report (" << outcomes.size() << " scenario(s))\n";
    for (const ScenarioOutcome& o : outcomes) {
        out << "\n[" << o.name << "] paradox " << (o.paradox_id ? std::to_string(*o.paradox_id) : "?") << '\n';
        if (const auto* f = std::get_if<ScenarioFailure>(&o.result)) {
            out << "  error (" << to_string(f->kind) << "): " << f->message << '\n';
            continue;
        }
        const auto& r = std::get<ParadoxReport>(o.result);
        out << "  measured TFP : " << format_number(r.measured_before) << " -> " << format_number(r.measured_after)
            << '\n';
        out << "  true TFP     : " << format_number(r.true_tfp_before) << " -> " << format_number(r.true_tfp_after)
            << '\n';
        out << "  confirmed    : " << (r.paradox_confirmed ? "yes" : "no") << '\n';
        out << "  productivity : " << to_string(r.welfare_direction) << '\n';
        for (const SubCheck& c : r.sub_checks) {
            out << "  check " << c.name << ": " << (c.passed ? "pass" : "FAIL") << '\n';
        }
        for (const ReportDetail& d : r.details) out << "  " << d.name << " = " << format_number(d.value) << '\n';
    }
}

}  // namespace tfpm
