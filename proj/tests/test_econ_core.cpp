#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "test_support.hpp"
#include "tfpm/econ_core.hpp"

using namespace tfpm;
using doctest::Approx;

namespace {

const Technology kCd37 = Technology::cobb_douglas(0.3, 0.7);
const Technology kCd55 = Technology::cobb_douglas(0.5, 0.5);

std::vector<Technology> sample_families()
{
    return {
        Technology::cobb_douglas(0.3, 0.7),
        Technology::cobb_douglas(0.4, 0.8, 1.7),
        Technology::ces(0.5, 0.5, 1.0),
        Technology::ces(0.3, -1.5, 0.9, 2.0),
        Technology::homothetic_translog(0.5, 1.2, -0.1),
        Technology::homothetic_translog(0.35, 0.9, -0.02, 1.3),
    };
}

}  // namespace

TEST_CASE("evaluate: Cobb-Douglas examples")
{
    CHECK(evaluate(kCd37, {1, 1, {}}) == Approx(1.0).epsilon(1e-12));
    CHECK(evaluate(kCd37, {16, 16, {}}) == Approx(16.0).epsilon(1e-12));
    // 8^0.3 from an independent exp/log evaluation.
    CHECK(evaluate(kCd37, {8, 1, {}}) == Approx(1.8660659830736148).epsilon(1e-12));
}

TEST_CASE("evaluate: boundary and errors")
{
    CHECK(evaluate(kCd37, {0, 5, {}}) == 0.0);
    CHECK(evaluate(Technology::ces(0.5, -2.0, 1.0), {0, 5, {}}) == 0.0);
    CHECK(evaluate(Technology::ces(0.5, 0.5, 1.0), {0, 4, {}}) == Approx(0.25 * 4.0));
    CHECK_ERROR_KIND(evaluate(kCd37, {0, 0, {}}), ErrorKind::Domain);
    CHECK_ERROR_KIND(evaluate(kCd37, {-1, 1, {}}), ErrorKind::InvalidParameter);
    CHECK_ERROR_KIND(evaluate(kCd37, {NAN, 1, {}}), ErrorKind::InvalidParameter);
    CHECK_ERROR_KIND(evaluate(Technology::cobb_douglas(0.3, 0.5, 1.0, 0.2), {1, 1, {}}),
                     ErrorKind::InvalidParameter);
}

TEST_CASE("technology parameter invariants")
{
    CHECK_ERROR_KIND(Technology::cobb_douglas(0.0, 0.7), ErrorKind::InvalidParameter);
    CHECK_ERROR_KIND(Technology::cobb_douglas(0.3, 0.7, -1.0), ErrorKind::InvalidParameter);
    CHECK_ERROR_KIND(Technology::ces(1.0, 0.5, 1.0), ErrorKind::InvalidParameter);
    CHECK_ERROR_KIND(Technology::ces(0.5, 0.0, 1.0), ErrorKind::InvalidParameter);
    CHECK_ERROR_KIND(Technology::ces(0.5, 1.0, 1.0), ErrorKind::InvalidParameter);
    CHECK_ERROR_KIND(Technology::ces(0.5, 0.5, 0.0), ErrorKind::InvalidParameter);
    CHECK_ERROR_KIND(Technology::homothetic_translog(0.5, 0.0, -0.1), ErrorKind::InvalidParameter);
    CHECK_ERROR_KIND(Technology::homothetic_translog(0.5, 1.2, 0.1), ErrorKind::InvalidParameter);
    CHECK_ERROR_KIND(Technology::homothetic_translog(1.0, 1.2, -0.1), ErrorKind::InvalidParameter);
    CHECK_ERROR_KIND(Technology::homothetic_translog(0.6, 1.2, -0.1, 1.0, 0.4), ErrorKind::InvalidParameter);
    CHECK_NOTHROW(Technology::homothetic_translog(0.5, 1.2, 0.0));
}

TEST_CASE("marginal products")
{
    const MarginalProducts sym = marginal_products(kCd55, {1, 1, {}});
    CHECK(sym.capital == Approx(0.5));
    CHECK(sym.labor == Approx(0.5));
    CHECK_FALSE(sym.intermediates.has_value());

    const InputBundle unit{1, 1, {}};
    const MarginalProducts cd = marginal_products(kCd37, unit);
    CHECK(oracle::rel_diff(cd.capital, oracle::fd_mp_capital(kCd37, unit)) < 1e-6);
    CHECK(oracle::rel_diff(cd.labor, oracle::fd_mp_labor(kCd37, unit)) < 1e-6);
    CHECK(cd.capital == Approx(0.3));
    CHECK(cd.labor == Approx(0.7));

    const Technology ces = Technology::ces(0.5, 0.5, 1.0);
    const InputBundle b{4, 1, {}};
    const MarginalProducts m = marginal_products(ces, b);
    CHECK(oracle::rel_diff(m.capital, oracle::fd_mp_capital(ces, b)) < 1e-6);
    CHECK(oracle::rel_diff(m.labor, oracle::fd_mp_labor(ces, b)) < 1e-6);

    CHECK_ERROR_KIND(marginal_products(kCd37, {0, 1, {}}), ErrorKind::Domain);
}

TEST_CASE("mrts")
{
    CHECK(mrts(kCd55, {3, 3, {}}) == Approx(1.0));
    CHECK(mrts(kCd37, {1, 1, {}}) == Approx(3.0 / 7.0).epsilon(1e-12));
    CHECK(mrts(kCd37, {2, 1, {}}) == Approx(0.3 / 0.7 / 2.0).epsilon(1e-12));
    const InputBundle b{2, 1, {}};
    CHECK(oracle::rel_diff(mrts(kCd37, b), oracle::fd_mp_capital(kCd37, b) / oracle::fd_mp_labor(kCd37, b)) < 1e-6);
    CHECK_ERROR_KIND(mrts(kCd37, {1, 0, {}}), ErrorKind::Domain);
}

TEST_CASE("scale elasticity")
{
    CHECK(scale_elasticity(kCd37, {5, 2, {}}) == Approx(1.0));
    const Technology cd12 = Technology::cobb_douglas(0.4, 0.8);
    CHECK(scale_elasticity(cd12, {3, 7, {}}) == Approx(1.2).epsilon(1e-12));
    CHECK(oracle::log_ratio_scale_elasticity(cd12, {3, 7, {}}) == Approx(1.2).epsilon(1e-9));

    const Technology tl = Technology::homothetic_translog(0.5, 1.2, -0.1);
    CHECK(scale_elasticity(tl, {1, 1, {}}) == Approx(1.2).epsilon(1e-12));
    CHECK(oracle::log_ratio_scale_elasticity(tl, {1, 1, {}}, 1.000001) == Approx(1.2).epsilon(1e-6));
    CHECK_ERROR_KIND(scale_elasticity(tl, {0, 1, {}}), ErrorKind::Domain);
}

TEST_CASE("translog scale elasticity is affine in ln h and decreasing when c < 0")
{
    const Technology tl = Technology::homothetic_translog(0.3, 1.1, -0.05);
    double previous = INFINITY;
    for (double s : {0.1, 0.5, 1.0, 2.0, 10.0, 50.0}) {
        const InputBundle b{2.0 * s, 3.0 * s, {}};
        const double log_h = 0.3 * std::log(b.capital) + 0.7 * std::log(b.labor);
        const double eps = scale_elasticity(tl, b);
        CHECK(eps == Approx(1.1 - 0.1 * log_h).epsilon(1e-12));
        CHECK(eps < previous);
        previous = eps;
    }
}

TEST_CASE("true TFP")
{
    CHECK(true_tfp(1.0, kCd37, {1, 1, {}}) == 1.0);
    CHECK(true_tfp(2.5, kCd37.with_level(3.0), {1, 1, {}}) == Approx(2.5));
    CHECK(true_tfp(3.0, kCd37, {8, 1, {}}) == Approx(1.6076601938044397).epsilon(1e-12));
    CHECK_ERROR_KIND(true_tfp(1.0, kCd37, {0, 1, {}}), ErrorKind::Domain);
    CHECK_ERROR_KIND(true_tfp(0.0, kCd37, {1, 1, {}}), ErrorKind::InvalidParameter);
}

TEST_CASE("gross-output variants")
{
    const Technology cd = Technology::cobb_douglas(0.3, 0.5, 2.0, 0.2);
    const InputBundle b{1.5, 2.0, 0.7};
    CHECK(evaluate(cd, b) == Approx(2.0 * std::pow(1.5, 0.3) * std::pow(2.0, 0.5) * std::pow(0.7, 0.2)));
    CHECK(scale_elasticity(cd, b) == Approx(1.0));

    const Technology nest = Technology::ces_gross_output(0.4, 0.3, 1.1, 0.25, -0.5, 1.2);
    const Technology tl = Technology::homothetic_translog(0.3, 1.1, -0.05, 1.0, 0.2);
    for (const Technology& tech : {cd, nest, tl}) {
        const MarginalProducts mp = marginal_products(tech, b);
        REQUIRE(mp.intermediates.has_value());
        CHECK(oracle::rel_diff(mp.capital, oracle::fd_mp_capital(tech, b)) < 1e-6);
        CHECK(oracle::rel_diff(mp.labor, oracle::fd_mp_labor(tech, b)) < 1e-6);
        CHECK(oracle::rel_diff(*mp.intermediates, oracle::fd_mp_intermediates(tech, b)) < 1e-6);
        CHECK(oracle::rel_diff(scale_elasticity(tech, b), oracle::log_ratio_scale_elasticity(tech, b, 1.000001)) <
              1e-5);
    }
    CHECK(scale_elasticity(nest, b) == Approx(1.1));
}

TEST_CASE("property: homogeneity of degree-1 families")
{
    oracle::Sampler rng(11);
    const std::vector<Technology> degree_one = {
        Technology::cobb_douglas(0.3, 0.7, 1.4),
        Technology::cobb_douglas(0.55, 0.45),
        Technology::ces(0.5, 0.5, 1.0),
        Technology::ces(0.2, -3.0, 1.0, 0.8),
    };
    int failures = 0;
    for (const Technology& tech : degree_one) {
        for (int i = 0; i < 100; ++i) {
            const InputBundle b{rng.log_uniform(1e-2, 1e3), rng.log_uniform(1e-2, 1e3), {}};
            const double base = evaluate(tech, b);
            for (double lambda : {0.5, 2.0, 10.0}) {
                if (oracle::rel_diff(evaluate(tech, scaled(b, lambda)), lambda * base) > 1e-12) ++failures;
            }
        }
    }
    CHECK(failures == 0);
}

TEST_CASE("property: analytic marginal products match finite differences")
{
    oracle::Sampler rng(12);
    int failures = 0;
    for (const Technology& tech : sample_families()) {
        for (int i = 0; i < 100; ++i) {
            const InputBundle b{rng.log_uniform(0.1, 20.0), rng.log_uniform(0.1, 20.0), {}};
            const MarginalProducts mp = marginal_products(tech, b);
            if (oracle::rel_diff(mp.capital, oracle::fd_mp_capital(tech, b)) > 1e-6) ++failures;
            if (oracle::rel_diff(mp.labor, oracle::fd_mp_labor(tech, b)) > 1e-6) ++failures;
        }
    }
    CHECK(failures == 0);
}

TEST_CASE("property: Cobb-Douglas scale elasticity is the exponent sum")
{
    oracle::Sampler rng(13);
    for (int i = 0; i < 50; ++i) {
        const double ak = rng.uniform(0.05, 1.0);
        const double al = rng.uniform(0.05, 1.0);
        const Technology tech = Technology::cobb_douglas(ak, al);
        const InputBundle b{rng.log_uniform(0.01, 100.0), rng.log_uniform(0.01, 100.0), {}};
        CHECK(scale_elasticity(tech, b) == ak + al);
    }
}

TEST_CASE("property: monotone in each input")
{
    oracle::Sampler rng(14);
    int failures = 0;
    for (const Technology& tech : sample_families()) {
        for (int i = 0; i < 100; ++i) {
            // Translog rises only while ln h < -b / (2c); sample inside that region.
            const InputBundle b{rng.log_uniform(0.05, 30.0), rng.log_uniform(0.05, 30.0), {}};
            const double f = evaluate(tech, b);
            if (!(evaluate(tech, {b.capital * 1.001, b.labor, {}}) > f)) ++failures;
            if (!(evaluate(tech, {b.capital, b.labor * 1.001, {}}) > f)) ++failures;
        }
    }
    CHECK(failures == 0);
}

TEST_CASE("property: true TFP round trip")
{
    oracle::Sampler rng(15);
    int failures = 0;
    for (const Technology& tech : sample_families()) {
        for (int i = 0; i < 100; ++i) {
            const InputBundle b{rng.log_uniform(0.05, 30.0), rng.log_uniform(0.05, 30.0), {}};
            const double a0 = rng.log_uniform(0.01, 100.0);
            const double y = evaluate(tech.with_level(1.0), b) * a0;
            if (oracle::rel_diff(true_tfp(y, tech, b), a0) > 1e-12) ++failures;
        }
    }
    CHECK(failures == 0);
}
