#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "test_support.hpp"
#include "tfpm/paradox.hpp"

using namespace tfpm;
using doctest::Approx;

namespace {

bool has_check(const ParadoxReport& r, const std::string& name)
{
    for (const SubCheck& c : r.sub_checks) {
        if (c.name == name) return c.passed;
    }
    return false;
}

ScenarioEntry entry_of(Scenario s, int line)
{
    ScenarioEntry e;
    e.name = s.name;
    e.line = line;
    e.paradox_id = s.paradox_id();
    e.content = std::move(s);
    return e;
}

Scenario progress_scenario(std::string name, double factor)
{
    return {std::move(name), "", TechnicalProgressCase{Technology::cobb_douglas(0.3, 0.7), {1, 1, {}}, {1, 1, {}}, {factor}}};
}

Scenario price_scenario(std::string name)
{
    return {std::move(name), "", InputPriceCase{Technology::cobb_douglas(0.3, 0.7), {1, 1, {}}, {1, 1, {}}, {0.8, 0.9, {}}}};
}

}  // namespace

TEST_CASE("technical progress lowers cost-based TFP")
{
    const ParadoxReport r = run_paradox_1(Technology::cobb_douglas(0.3, 0.7), {1, 1, {}}, {1, 1, {}}, {1.25});
    CHECK(r.paradox_id == 1);
    CHECK(r.measured_before == Approx(2.0).epsilon(1e-12));
    CHECK(r.measured_after == Approx(1.6).epsilon(1e-12));
    CHECK(r.true_tfp_before == Approx(1.0).epsilon(1e-12));
    CHECK(r.true_tfp_after == Approx(1.25).epsilon(1e-12));
    CHECK(r.paradox_confirmed);
    CHECK(r.welfare_direction == WelfareDirection::Improved);
    CHECK(has_check(r, "frontier_dominates"));

    const ParadoxReport ces = run_paradox_1(Technology::ces(0.5, 0.5, 1.0), {1, 1, {}}, {4, 1, {}}, {2.0});
    CHECK(ces.measured_after == Approx(ces.measured_before / 2.0).epsilon(1e-12));

    CHECK_ERROR_KIND(run_paradox_1(Technology::cobb_douglas(0.3, 0.7), {1, 1, {}}, {1, 1, {}}, {1.0}),
                     ErrorKind::InvalidShift);
    CHECK_ERROR_KIND(run_paradox_1(Technology::cobb_douglas(0.3, 0.7), {1, 1, {}}, {1, 1, {}}, {0.9}),
                     ErrorKind::InvalidShift);
}

TEST_CASE("property: measured TFP scales by the inverse shift factor")
{
    oracle::Sampler rng(41);
    for (int i = 0; i < 200; ++i) {
        const Technology tech = Technology::cobb_douglas(rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9),
                                                         rng.log_uniform(0.1, 10.0));
        const double factor = rng.uniform(1.0001, 3.0);
        const ParadoxReport r = run_paradox_1(tech, {rng.log_uniform(0.1, 100.0), rng.log_uniform(0.1, 100.0), {}},
                                              {rng.log_uniform(0.1, 10.0), rng.log_uniform(0.1, 10.0), {}}, {factor});
        CHECK(oracle::rel_diff(r.measured_after, r.measured_before / factor) <= 1e-12);
        CHECK(r.paradox_confirmed);
    }
}

TEST_CASE("allocative efficiency lowers cost-based TFP")
{
    const ParadoxReport r = run_paradox_2(Technology::cobb_douglas(0.5, 0.5), {1, 1, {}}, {4, 1, {}});
    CHECK(r.paradox_id == 2);
    CHECK(r.detail("cost_before").value() == Approx(5.0).epsilon(1e-12));
    CHECK(r.detail("cost_after").value() == Approx(4.0).epsilon(1e-10));
    CHECK(r.detail("capital_after").value() == Approx(2.0).epsilon(1e-10));
    CHECK(r.detail("labor_after").value() == Approx(2.0).epsilon(1e-10));
    CHECK(std::abs(r.measured_after / r.measured_before - 0.8) <= 1e-8);
    CHECK(oracle::rel_diff(r.detail("frontier_after").value(), r.detail("frontier_before").value()) <= 1e-8);
    CHECK(r.true_tfp_before == Approx(1.0));
    CHECK(r.true_tfp_after == Approx(1.0));
    CHECK(r.paradox_confirmed);
    CHECK(r.welfare_direction == WelfareDirection::Improved);
    CHECK(r.all_sub_checks_passed());

    CHECK_ERROR_KIND(run_paradox_2(Technology::cobb_douglas(0.5, 0.5), {1, 1, {}}, {2, 2, {}}),
                     ErrorKind::AlreadyEfficient);
}

TEST_CASE("property: measured TFP falls by the allocative gap")
{
    oracle::Sampler rng(42);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        const Technology tech = rng.integer(0, 1) == 0
                                    ? Technology::cobb_douglas(rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9))
                                    : Technology::ces(rng.uniform(0.2, 0.8), rng.uniform(-1.5, 0.6), 1.0);
        const FactorPrices prices{rng.log_uniform(0.2, 5.0), rng.log_uniform(0.2, 5.0), {}};
        const InputBundle start{rng.log_uniform(0.1, 50.0), rng.log_uniform(0.1, 50.0), {}};
        const double gap = allocative_gap(tech, prices, start);
        if (gap > 1.0 - 1e-6) continue;
        const ParadoxReport r = run_paradox_2(tech, prices, start);
        CHECK(std::abs(r.measured_after / r.measured_before - gap) <= 1e-8);
        CHECK(r.all_sub_checks_passed());
        ++checked;
    }
    CHECK(checked > 150);
}

TEST_CASE("scale efficiency lowers cost-based TFP")
{
    const Technology tl = Technology::homothetic_translog(0.5, 1.2, -0.1);
    const ParadoxReport up = run_paradox_3(tl, {1, 1, {}}, {1, 1, {}});
    CHECK(up.paradox_id == 3);
    CHECK(std::abs(up.detail("scale_factor").value() - std::exp(1.0)) <= 1e-7);
    CHECK(std::abs(up.measured_after / up.measured_before - std::exp(-0.1)) <= 1e-7);
    CHECK(std::abs(up.detail("scale_elasticity_at_mpss").value() - 1.0) <= 1e-7);
    CHECK(up.detail("scale_elasticity_before").value() == Approx(1.2).epsilon(1e-9));
    CHECK(up.paradox_confirmed);
    CHECK(up.welfare_direction == WelfareDirection::Improved);
    CHECK(has_check(up, "more_than_proportional_output"));
    CHECK(up.all_sub_checks_passed());

    // h = e^3 sits in the decreasing-returns region; the MPSS is at ln h = 1.
    const double e3 = std::exp(3.0);
    const ParadoxReport down = run_paradox_3(tl, {1, 1, {}}, {e3, e3, {}});
    CHECK(std::abs(down.detail("scale_factor").value() - std::exp(-2.0)) <= 1e-7);
    CHECK(has_check(down, "less_than_proportional_decrease"));
    CHECK(down.all_sub_checks_passed());
    CHECK(down.paradox_confirmed);
    // C/f: 2e^3 / e^2.7 before, 2e / e^1.1 after.
    CHECK(std::abs(down.measured_after / down.measured_before - std::exp(-0.4)) <= 1e-7);
}

TEST_CASE("scale efficiency at the MPSS is a fixed point")
{
    const ParadoxReport r = run_paradox_3(Technology::homothetic_translog(0.5, 1.0, -0.1), {1, 1, {}}, {1, 1, {}});
    CHECK(r.detail("scale_factor").value() == 1.0);
    CHECK(r.measured_after == r.measured_before);
    CHECK_FALSE(r.paradox_confirmed);
    CHECK(r.welfare_direction == WelfareDirection::UnchangedProductivity);
    CHECK(r.all_sub_checks_passed());
}

TEST_CASE("scale paradox needs a technology with an interior MPSS")
{
    CHECK_ERROR_KIND(run_paradox_3(Technology::cobb_douglas(0.3, 0.7), {1, 1, {}}, {1, 1, {}}),
                     ErrorKind::InvalidTechnology);
    CHECK_ERROR_KIND(run_paradox_3(Technology::homothetic_translog(0.5, 1.2, 0.0), {1, 1, {}}, {1, 1, {}}),
                     ErrorKind::InvalidTechnology);
}

TEST_CASE("lower input prices lower cost-based TFP")
{
    const ParadoxReport r = run_paradox_4(Technology::cobb_douglas(0.3, 0.7), {1, 1, {}}, {1, 1, {}}, {0.8, 0.9, {}});
    CHECK(r.paradox_id == 4);
    CHECK(r.measured_before == Approx(2.0).epsilon(1e-12));
    CHECK(r.measured_after == Approx(1.7).epsilon(1e-12));
    CHECK(r.true_tfp_before == r.true_tfp_after);
    CHECK(r.detail("cost_ratio").value() == Approx(0.85).epsilon(1e-12));
    CHECK(r.paradox_confirmed);
    CHECK(r.welfare_direction == WelfareDirection::UnchangedProductivity);

    const Technology cd = Technology::cobb_douglas(0.3, 0.7);
    CHECK_ERROR_KIND(run_paradox_4(cd, {1, 1, {}}, {1, 1, {}}, {0.8, 1.0, {}}), ErrorKind::NonDominatedPrices);
    CHECK_ERROR_KIND(run_paradox_4(cd, {1, 1, {}}, {1, 1, {}}, {1.0, 0.9, {}}), ErrorKind::NonDominatedPrices);
    CHECK_ERROR_KIND(run_paradox_4(cd, {1, 1, {}}, {1, 1, {}}, {1.2, 0.5, {}}), ErrorKind::NonDominatedPrices);
}

TEST_CASE("property: measured TFP falls by the input cost ratio")
{
    oracle::Sampler rng(44);
    for (int i = 0; i < 200; ++i) {
        const Technology tech = Technology::ces(rng.uniform(0.2, 0.8), rng.uniform(-1.0, 0.5), rng.uniform(0.6, 1.4));
        const InputBundle b{rng.log_uniform(0.1, 100.0), rng.log_uniform(0.1, 100.0), {}};
        const FactorPrices before{rng.log_uniform(0.1, 10.0), rng.log_uniform(0.1, 10.0), {}};
        const FactorPrices after{before.capital_price * rng.uniform(0.1, 0.999), before.wage * rng.uniform(0.1, 0.999), {}};
        const ParadoxReport r = run_paradox_4(tech, b, before, after);
        const double ratio = input_cost(after, b) / input_cost(before, b);
        CHECK(oracle::rel_diff(r.measured_after / r.measured_before, ratio) <= 1e-12);
        CHECK(r.paradox_confirmed);
    }
}

TEST_CASE("lower regulated markups lower revenue-based TFP")
{
    const Technology gross = Technology::cobb_douglas(0.3, 0.5, 2.0, 0.2);
    const InputBundle unit{1, 1, 1.0};
    const PricingScheme before{{{1, 0.2, 3}, {2, 0.1, 4}}};
    const PricingScheme after{{{1, 0.1, 3}, {2, 0.05, 4}}};
    const ParadoxReport r = run_paradox_5(before, after, gross, unit);
    CHECK(r.paradox_id == 5);
    CHECK(r.measured_before == Approx(6.2).epsilon(1e-12));
    CHECK(r.measured_after == Approx(5.85).epsilon(1e-12));
    CHECK(r.true_tfp_before == r.true_tfp_after);
    CHECK(r.paradox_confirmed);
    CHECK(has_check(r, "denominator_unchanged"));

    CHECK_ERROR_KIND(run_paradox_5(before, {{{1, 0.1, 3}}}, gross, unit), ErrorKind::LengthMismatch);
    CHECK_ERROR_KIND(run_paradox_5(before, {{{1.5, 0.1, 3}, {2, 0.05, 4}}}, gross, unit), ErrorKind::ScenarioMismatch);
    CHECK_ERROR_KIND(run_paradox_5(before, {{{1, 0.1, 3}, {2, 0.05, 5}}}, gross, unit), ErrorKind::ScenarioMismatch);
    CHECK_ERROR_KIND(run_paradox_5(before, {{{1, 0.1, 3}, {2, 0.1, 4}}}, gross, unit), ErrorKind::MarkupNotReduced);
    CHECK_ERROR_KIND(run_paradox_5(before, {{{1, 0.3, 3}, {2, 0.05, 4}}}, gross, unit), ErrorKind::MarkupNotReduced);
}

TEST_CASE("property: revenue TFP falls by exactly the lost markup revenue")
{
    oracle::Sampler rng(45);
    const Technology gross = Technology::cobb_douglas(0.3, 0.5, 1.7, 0.2);
    for (int i = 0; i < 200; ++i) {
        PricingScheme before;
        PricingScheme after;
        double lost = 0.0;
        const int n = rng.integer(1, 5);
        for (int k = 0; k < n; ++k) {
            const double mc = rng.log_uniform(0.1, 10.0);
            const double y = rng.log_uniform(0.1, 100.0);
            const double mu = rng.uniform(-0.5, 1.0);
            const double cut = rng.uniform(1e-3, 0.4);
            before.items.push_back({mc, mu, y});
            after.items.push_back({mc, mu - cut, y});
            lost += cut * mc * y;
        }
        const InputBundle b{rng.log_uniform(0.5, 5.0), rng.log_uniform(0.5, 5.0), rng.log_uniform(0.5, 5.0)};
        const ParadoxReport r = run_paradox_5(before, after, gross, b);
        const double f = evaluate(gross, b);
        CHECK((r.measured_before - r.measured_after) * f == Approx(lost).epsilon(1e-9));
        CHECK(r.paradox_confirmed);
    }
}

TEST_CASE("run_scenario dispatches on the scenario case")
{
    CHECK(run_scenario(progress_scenario("p", 1.25)).paradox_id == 1);
    CHECK(run_scenario(price_scenario("q")).paradox_id == 4);
    const Scenario alloc{"a", "", AllocativeCase{Technology::cobb_douglas(0.5, 0.5), {1, 1, {}}, {4, 1, {}}}};
    CHECK(alloc.paradox_id() == 2);
    CHECK(run_scenario(alloc).measured_after == Approx(2.0).epsilon(1e-9));
}

TEST_CASE("run_all isolates failures and orders by paradox id")
{
    std::vector<ScenarioEntry> entries;
    entries.push_back(entry_of(price_scenario("prices"), 1));
    entries.push_back(entry_of(progress_scenario("bad-shift", 1.0), 10));
    entries.push_back(entry_of(progress_scenario("good-shift", 1.25), 20));
    ScenarioEntry broken;
    broken.name = "unparsed";
    broken.line = 30;
    broken.content = ScenarioFailure{ErrorKind::Parse, "line 30: missing key"};
    entries.push_back(broken);

    const std::vector<ScenarioOutcome> out = run_all(entries);
    REQUIRE(out.size() == 4);
    CHECK(out[0].name == "bad-shift");
    CHECK(out[1].name == "good-shift");
    CHECK(out[2].name == "prices");
    CHECK(out[3].name == "unparsed");
    CHECK_FALSE(out[0].ok());
    CHECK(std::get<ScenarioFailure>(out[0].result).kind == ErrorKind::InvalidShift);
    CHECK(out[1].ok());
    CHECK(std::get<ParadoxReport>(out[1].result).measured_after == Approx(1.6).epsilon(1e-12));
    CHECK(out[2].ok());
    CHECK(std::get<ScenarioFailure>(out[3].result).kind == ErrorKind::Parse);
}

TEST_CASE("run_all is deterministic")
{
    std::vector<ScenarioEntry> entries;
    entries.push_back(entry_of(Scenario{"scale", "", ScaleCase{Technology::homothetic_translog(0.5, 1.2, -0.1), {1, 1, {}}, {1, 1, {}}}}, 1));
    entries.push_back(entry_of(Scenario{"alloc", "", AllocativeCase{Technology::ces(0.4, -0.5, 1.0), {2, 1, {}}, {1, 9, {}}}}, 2));
    const std::vector<ScenarioOutcome> a = run_all(entries);
    const std::vector<ScenarioOutcome> b = run_all(entries);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const ParadoxReport& ra = std::get<ParadoxReport>(a[i].result);
        const ParadoxReport& rb = std::get<ParadoxReport>(b[i].result);
        CHECK(ra.measured_before == rb.measured_before);
        CHECK(ra.measured_after == rb.measured_after);
        CHECK(ra.details.size() == rb.details.size());
    }
}
