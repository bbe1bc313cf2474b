#include <catch_amalgamated.hpp>

#include <cmath>

#include "liftlab/suites.hpp"

using namespace liftlab;

namespace {
SuiteOptions quick_opts() {
    SuiteOptions o;
    o.seed = 1;
    o.threads = 2;
    o.slack = 0.05;
    return o;
}

const RatioReport& find_case(const SuiteResult& sr, const std::string& id) {
    for (const auto& r : sr.reports)
        if (r.case_id == id) return r;
    FAIL("case " + id + " not found in " + sr.suite_id);
    static RatioReport dummy;
    return dummy;
}
}  // namespace

TEST_CASE("pinned bound constants") {
    CHECK(8.0 / (std::pow(2.0 * (0.5 - 0.3) * 2.0 + 1.0, 2.0) - 1.0) == Catch::Approx(8.0 / 2.24).epsilon(1e-12));
    CHECK(8.0 / (std::pow(2.0 * 0.5 + 1.0, 2.0) - 1.0) == Catch::Approx(8.0 / 3.0).epsilon(1e-12));
    // gap constant at q=1, gamma=1.5, ratio 2 collapses to 1
    double qm1 = 0.0, gamma = 1.5;
    CHECK(std::pow(2.0, std::max(gamma - 1.0 - qm1, 0.0)) * std::pow(2.0, qm1 - gamma + 1.0) == Catch::Approx(1.0));
}

TEST_CASE("sharp segment-integration suite") {
    auto sr = run_fractional_integration(quick_opts());
    std::size_t explicit_rows = 0;
    for (const auto& r : sr.reports) {
        INFO(r.case_id << " lhs=" << r.lhs << " rhs=" << r.rhs << " bound=" << r.bound_constant);
        CHECK(r.pass);
        if (r.mode == Mode::ExplicitConstant) ++explicit_rows;
    }
    CHECK(explicit_rows >= 30);  // 3 parameter rows x 10 fields
    CHECK_THROWS_AS(run_fractional_integration(SuiteOptions{1, 2, 0.05, "torus"}), Error);
}

TEST_CASE("gap scaling suite") {
    auto sr = run_gap_scaling(quick_opts());
    for (const auto& r : sr.reports) {
        INFO(r.case_id << " ratio=" << r.ratio << " bound=" << r.bound_constant);
        CHECK(r.pass);
    }
    CHECK_THROWS_AS(run_gap_scaling(SuiteOptions{1, 2, 0.05, "torus"}), Error);
}

TEST_CASE("truncated powers suite") {
    auto sr = run_truncated_powers(quick_opts());
    for (const auto& r : sr.reports) {
        INFO(r.case_id << " lhs=" << r.lhs << " rhs=" << r.rhs);
        CHECK(r.pass);
    }
    // the closed-form anchor 2 ln 4 - 3/2 is reproduced by the quadrature
    const auto& anchor = find_case(sr, "t2_closed_form");
    CHECK(anchor.lhs <= 1e-9);
}

TEST_CASE("exponent equivalence suite") {
    auto sr = run_exponent_equivalence(quick_opts());
    for (const auto& r : sr.reports) {
        INFO(r.case_id << " ratio=" << r.ratio);
        CHECK(r.pass);
    }
    CHECK(find_case(sr, "equal_exponents_ratio_one").ratio == Catch::Approx(1.0));
}

TEST_CASE("lifting estimates suite") {
    auto sr = run_lifting_estimates(quick_opts());
    for (const auto& r : sr.reports) {
        INFO(r.case_id << " lhs=" << r.lhs << " rhs=" << r.rhs);
        CHECK(r.pass);
    }
    // the sp = 1 demo documents creeping growth, not a bound
    const auto& demo = find_case(sr, "sp1_expected_blowup");
    CHECK(demo.lhs > demo.rhs);
}

TEST_CASE("nonlinear exponent suite") {
    auto sr = run_nonlinear_exponent(quick_opts());
    for (const auto& r : sr.reports) {
        INFO(r.case_id << " lhs=" << r.lhs << " rhs=" << r.rhs);
        CHECK(r.pass);
    }
    REQUIRE(sr.series.size() == 1);
    CHECK(sr.series[0].points.size() == 9);
}

TEST_CASE("large scale suite") {
    auto sr = run_large_scale(quick_opts());
    for (const auto& r : sr.reports) {
        INFO(r.case_id << " lhs=" << r.lhs << " rhs=" << r.rhs);
        CHECK(r.pass);
    }
}

TEST_CASE("counterexample series") {
    auto sr = run_counterexample(quick_opts(), 54.598150033144236, 1.5, 4, 128);
    // gradient terms follow 1/ln(lambda0 2^{j^2-1} - 1) exactly
    REQUIRE(sr.series.size() == 2);
    const auto& grad = sr.series[0].points;
    double g_int = grad[0].second * std::log(std::exp(4.0) - 1.0);
    CHECK(grad[0].second / g_int == Catch::Approx(0.2511).margin(2e-4));
    for (std::size_t j = 0; j < 4; ++j) {
        double expected = g_int / std::log(std::exp(4.0) * std::exp2(static_cast<double>((j + 1) * (j + 1)) - 1.0) - 1.0);
        CHECK(grad[j].second == Catch::Approx(expected).epsilon(1e-9));
    }
    // decreasing gradient terms
    for (const auto& r : sr.reports)
        if (r.case_id.rfind("grad_decreasing", 0) == 0) CHECK(r.pass);

    // the pinned summability bound 2 term_1 is arithmetically false for
    // lambda0 = e^4: term_2 * 4 / term_1 = 4 ln(e^4-1)/ln(8 e^4-1) ~ 2.62
    const auto& g2 = find_case(sr, "grad_summability_j2");
    CHECK_FALSE(g2.pass);
    CHECK(g2.lhs / g2.rhs == Catch::Approx(4.0 * std::log(std::exp(4.0) - 1.0) / std::log(8.0 * std::exp(4.0) - 1.0))
                                 .epsilon(1e-9));

    // oscillation terms saturate on a fixed grid: first two stay within the
    // factor-2 band, the tail decays like 1/ln lambda_j
    CHECK(find_case(sr, "osc_nonvanishing_j1").pass);
    CHECK(find_case(sr, "osc_nonvanishing_j2").pass);
    CHECK_FALSE(find_case(sr, "osc_nonvanishing_j4").pass);

    CHECK_THROWS_AS(run_counterexample(quick_opts(), 1.5, 1.5, 4, 64), Error);   // lambda0 <= 2
    CHECK_THROWS_AS(run_counterexample(quick_opts(), 8.0, 2.5, 4, 64), Error);   // q >= m
    CHECK_THROWS_AS(run_counterexample(quick_opts(), 8.0, 1.5, 9, 64), Error);   // too many terms
}

TEST_CASE("supercritical suite") {
    auto sr = run_supercritical(quick_opts());
    for (const auto& r : sr.reports) {
        INFO(r.case_id << " lhs=" << r.lhs << " rhs=" << r.rhs);
        CHECK(r.pass);
    }
    CHECK(find_case(sr, "s_flat_value").lhs == 0.0);
    const auto& thr = find_case(sr, "membership_threshold_location");
    INFO("threshold offset " << thr.lhs);
    CHECK(thr.lhs <= 0.05);
}

TEST_CASE("small lemmas suite") {
    auto sr = run_small_lemmas(quick_opts());
    for (const auto& r : sr.reports) {
        INFO(r.case_id << " lhs=" << r.lhs << " rhs=" << r.rhs);
        CHECK(r.pass);
    }
    CHECK(find_case(sr, "capped_sum_ones").lhs == 3.0);
    // coarsening error decreases with k; smooth fields contract at least
    // quadratically from k=2 to k=4
    const auto& k2 = find_case(sr, "coarsening_k2");
    const auto& k4 = find_case(sr, "coarsening_k4");
    CHECK(k4.lhs < k2.lhs);
    CHECK(k2.lhs / k4.lhs >= 2.0);
}

TEST_CASE("decomposition suite") {
    auto sr = run_decomposition(quick_opts());
    for (const auto& r : sr.reports) {
        INFO(r.case_id << " lhs=" << r.lhs << " rhs=" << r.rhs);
        CHECK(r.pass);
    }
}

TEST_CASE("deck invariance suite") {
    auto sr = run_deck_invariance(quick_opts());
    for (const auto& r : sr.reports) {
        INFO(r.case_id << " lhs=" << r.lhs << " rhs=" << r.rhs);
        CHECK(r.pass);
    }
    CHECK(sr.reports.size() == 20);  // 3 coverings x 6 energies + 2 segment rows
}

TEST_CASE("registry") {
    CHECK(suite_registry().size() == 12);
    CHECK_THROWS_AS(run_suites("no_such_suite", quick_opts()), Error);
    auto one = run_suites("deck_invariance", quick_opts());
    CHECK(one.size() == 1);
}
