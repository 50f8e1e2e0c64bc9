#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hlab/fourier.hpp"
#include "hlab/rng.hpp"
#include "hlab/weights.hpp"

#include "oracles.hpp"

using namespace hlab;

namespace {
const double kPi = std::numbers::pi;

SampledFunction smooth_compact(const Grid& grid, Rng& rng, double support) {
    // random smooth function supported in [-support, support]
    const double c1 = rng.uniform(-1.0, 1.0), c2 = rng.uniform(-1.0, 1.0);
    const double f1 = rng.uniform(0.5, 2.0), f2 = rng.uniform(0.5, 3.0);
    return SampledFunction::sample(grid, [=](double s) {
        if (std::abs(s) >= support) return cplx(0.0);
        const double u = s / support;
        const double bump = std::exp(-1.0 / (1.0 - u * u));
        return cplx(bump * (c1 * std::cos(f1 * s) + c2 * std::sin(f2 * s)),
                    bump * 0.3 * std::sin(f1 * f2 * s));
    });
}
}  // namespace

TEST_CASE("polynomial weight diagnostics: M = 1, alpha = 1, strongly admissible") {
    const Weight v = Weight::poly(1.0);
    const AdmissibilityReport rep = admissibility_report(v, 1e6, 1200);
    CHECK(std::abs(rep.m_v_estimate - 1.0) < 1e-6);
    CHECK(rep.doubling_trend == DoublingTrend::bounded);
    CHECK(std::abs(rep.growth_exponent - 1.0) < 0.01);
    // 1/v = (1+|s|)^{-1} is square integrable with \int 1/v^2 = 2
    CHECK(rep.strongly_admissible);
    CHECK(std::abs(rep.inv_v_sq_integral - 2.0) < 1e-4);
}

TEST_CASE("log weight doubling stays below 1 + ln 2") {
    const Weight v = Weight::polylog(0.0, 1.0);
    const AdmissibilityReport rep = admissibility_report(v, 1e6, 1200);
    CHECK(rep.doubling_sup <= 1.0 + std::log(2.0) + 1e-6);
    CHECK(rep.doubling_trend == DoublingTrend::bounded);
}

TEST_CASE("exp(sqrt) weight is classified diverging at scan range 1e3") {
    const Weight v = Weight::custom("exp-sqrt", [](double s) { return std::exp(std::sqrt(std::abs(s))); });
    const AdmissibilityReport rep = admissibility_report(v, 1e3, 1200);
    CHECK(rep.doubling_trend == DoublingTrend::diverging);
    CHECK_FALSE(rep.admissible());
}

TEST_CASE("constant weight has M estimate exactly 1/2") {
    const AdmissibilityReport rep = admissibility_report(Weight::constant(), 1e4, 1000);
    CHECK(rep.m_v_estimate == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("report demands enough samples and valid weights") {
    CHECK_THROWS_AS(admissibility_report(Weight::poly(1.0), 1e3, 10), config_error);
    const Weight bad = Weight::custom("below-one", [](double) { return 0.9; });
    CHECK_THROWS_AS(admissibility_report(bad, 1e3, 1000), input_error);
    const Weight nan = Weight::custom("nan", [](double s) { return s > 100.0 ? std::nan("") : 1.0; });
    CHECK_THROWS_AS(admissibility_report(nan, 1e3, 1000), input_error);
}

TEST_CASE("weight spec mini-grammar") {
    CHECK(Weight::parse("const").family() == WeightFamily::constant);
    CHECK(Weight::parse("poly:1.5")(1.0) == doctest::Approx(std::pow(2.0, 1.5)));
    const Weight vl = Weight::parse("polylog:0.5:1.2");
    CHECK(vl(0.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(Weight::parse("bogus:1"), config_error);
    CHECK_THROWS_AS(Weight::parse("table:/nonexistent.csv"), config_error);
}

TEST_CASE("table weights interpolate and clamp") {
    const Weight t = Weight::table({{-1.0, 2.0}, {0.0, 1.0}, {1.0, 3.0}});
    CHECK(t(0.5) == doctest::Approx(2.0));
    CHECK(t(-10.0) == doctest::Approx(2.0));
    CHECK(t(10.0) == doctest::Approx(3.0));
}

TEST_CASE("smooth equivalent: ratio finite, constants fixed, evenness kept") {
    double ratio = 0.0;
    const Weight v = Weight::poly(1.0);
    const Weight vt = smooth_equivalent(v, 1.0, &ratio);
    CHECK(std::isfinite(ratio));
    CHECK(ratio >= 1.0);
    CHECK(ratio < 40.0);  // comfortably inside the 4 M_v^2 C^2 envelope of the construction

    double cratio = 0.0;
    const Weight ct = smooth_equivalent(Weight::constant(), 0.7, &cratio);
    for (double s : {-3.0, 0.0, 1.7, 20.0}) CHECK(ct(s) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cratio == doctest::Approx(1.0).epsilon(1e-14));

    for (double s : {0.3, 1.1, 7.7, 42.0}) {
        CHECK(std::abs(vt(s) - vt(-s)) <= 1e-12 * std::max(1.0, vt(s)));
    }
    CHECK_THROWS_AS(smooth_equivalent(v, -1.0, nullptr), input_error);
}

TEST_CASE("weighted norms of the quarter gaussian") {
    const Grid grid = default_grid();
    const double c = 1.0 / (2.0 * std::sqrt(kPi));
    const SampledFunction f =
        SampledFunction::sample(grid, [c](double s) { return cplx(c * std::exp(-s * s / 4.0), 0.0); });

    CHECK(weighted_norm(f, Weight::constant(), 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-8));
    // \int |s| e^{-s^2/4} ds = 4, so the poly(1)-weighted mass is 1 + 2/sqrt(pi);
    // the |s| kink costs O(h^2) locally, hence the 1e-4 tolerance
    const double want = 1.0 + 2.0 / std::sqrt(kPi);
    const double oracle = oracles::integrate_line([c](double s) {
                              return cplx((1.0 + std::abs(s)) * c * std::exp(-s * s / 4.0), 0.0);
                          }).real();
    CHECK(oracle == doctest::Approx(want).epsilon(1e-10));
    CHECK(weighted_norm(f, Weight::poly(1.0), 0.0, 1.0) == doctest::Approx(want).epsilon(1e-4));

    CHECK(weighted_norm(SampledFunction::zero(grid), Weight::poly(2.0), 0.5, 2.0) == 0.0);
    CHECK(weighted_norm(SampledFunction::zero(grid), Weight::constant(), 0.0,
                        std::numeric_limits<double>::infinity()) == 0.0);
}

TEST_CASE("subadditivity holds on a fresh lattice with the estimated constant") {
    Rng rng(2024);
    for (const Weight& v : {Weight::poly(1.0), Weight::polylog(0.5, 1.2), Weight::constant()}) {
        const double m = v.report().m_v_estimate;
        for (int i = 0; i < 2000; ++i) {
            const double s = rng.uniform(-500.0, 500.0);
            const double t = rng.uniform(-500.0, 500.0);
            CHECK(v(s + t) <= (m + 1e-6) * (v(s) + v(t)));
        }
    }
}

TEST_CASE("Young inequality with constant 2 M_v on random compact pairs") {
    const Grid grid = default_grid();
    Rng rng(99);
    for (const Weight& v : {Weight::poly(1.0), Weight::polylog(0.5, 1.2)}) {
        const double m = v.report().m_v_estimate + 1e-6;
        for (double omega : {0.0, 0.5}) {
            for (double p : {1.0, 2.0}) {
                for (int trial = 0; trial < 12; ++trial) {
                    const SampledFunction f = smooth_compact(grid, rng, 4.0);
                    const SampledFunction g = smooth_compact(grid, rng, 4.0);
                    const double lhs = weighted_norm(convolve(f, g), v, omega, p);
                    const double rhs = 2.0 * m * weighted_norm(f, v, omega, 1.0) *
                                       weighted_norm(g, v, omega, p);
                    CHECK(lhs <= rhs * (1.0 + 1e-6));
                }
            }
        }
    }
}

TEST_CASE("strong-admissibility convolution algebra constant 2 M_v ||1/v||_2") {
    const Grid grid = default_grid();
    Rng rng(7);
    const Weight v = Weight::poly(1.0);
    const AdmissibilityReport rep = v.report();
    REQUIRE(rep.strongly_admissible);
    const double c = 2.0 * (rep.m_v_estimate + 1e-6) * std::sqrt(rep.inv_v_sq_integral);
    for (double omega : {0.0, 0.5}) {
        for (int trial = 0; trial < 12; ++trial) {
            const SampledFunction f = smooth_compact(grid, rng, 4.0);
            const SampledFunction g = smooth_compact(grid, rng, 4.0);
            const double lhs = weighted_norm(convolve(f, g), v, omega, 2.0);
            const double rhs = c * weighted_norm(f, v, omega, 2.0) * weighted_norm(g, v, omega, 2.0);
            CHECK(lhs <= rhs * (1.0 + 1e-6));
        }
    }
}

TEST_CASE("powers of an admissible weight stay admissible") {
    for (double alpha : {0.5, 2.0, 3.0}) {
        const Weight va = Weight::custom("poly-pow", [alpha](double s) {
            return std::pow(1.0 + std::abs(s), alpha);
        });
        const AdmissibilityReport rep = admissibility_report(va, 1e5, 1000);
        CHECK(rep.doubling_trend == DoublingTrend::bounded);
        CHECK(std::abs(rep.growth_exponent - alpha) < 0.02);
    }
}

TEST_CASE("growth exponent dominates the weight polynomially") {
    for (const Weight& v : {Weight::poly(1.5), Weight::polylog(1.0, 2.0)}) {
        const AdmissibilityReport rep = admissibility_report(v, 1e5, 1000);
        const double a = rep.growth_exponent + 0.1;
        double inner = 0.0, outer = 0.0;
        for (int k = 0; k <= 400; ++k) {
            const double s = 1e5 * static_cast<double>(k) / 400.0;
            const double q = v(s) / std::pow(1.0 + s, a);
            if (k <= 200) inner = std::max(inner, q);
            else outer = std::max(outer, q);
        }
        CHECK(std::isfinite(outer));
        CHECK(outer <= inner * (1.0 + 1e-9));  // no growth towards the edge
    }
}
