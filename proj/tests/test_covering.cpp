#include <catch_amalgamated.hpp>

#include "liftlab/covering.hpp"
#include "liftlab/rng.hpp"

using namespace liftlab;

namespace {
const double pi = std::numbers::pi;

TargetPoint random_total_point(SplitMix64& rng, const CoveringChart& cov) {
    switch (cov.family()) {
        case CoveringFamily::LineOverCircle: return pt1(rng.uniform(-40.0, 40.0));
        case CoveringFamily::KFoldCircle: return pt1(rng.uniform(0.0, two_pi * cov.sheets()));
        case CoveringFamily::PlaneOverTorus: return pt2(rng.uniform(-30.0, 30.0), rng.uniform(-30.0, 30.0));
    }
    return pt1(0.0);
}

DeckElement random_deck(SplitMix64& rng, const CoveringChart& cov) {
    if (cov.family() == CoveringFamily::KFoldCircle) return {static_cast<long>(rng.below(cov.sheets())), 0};
    long a = static_cast<long>(rng.below(9)) - 4;
    long b = cov.deck_rank() == 2 ? static_cast<long>(rng.below(9)) - 4 : 0;
    return {a, b};
}
}  // namespace

TEST_CASE("projection reduces coordinates") {
    CoveringChart line = CoveringChart::line_over_circle();
    CHECK(line.project(pt1(3.0 * pi))[0] == Catch::Approx(pi).margin(1e-12));
    CHECK(line.project(pt1(0.0))[0] == 0.0);
    CoveringChart k2 = CoveringChart::k_fold_circle(2);
    CHECK(k2.project(pt1(3.0 * pi))[0] == Catch::Approx(pi).margin(1e-12));
}

TEST_CASE("local lift picks the nearest sheet") {
    CoveringChart line = CoveringChart::line_over_circle();
    CHECK(line.local_lift(pt1(pi / 2.0), pt1(0.0))[0] == Catch::Approx(pi / 2.0).margin(1e-12));
    CHECK(line.local_lift(pt1(3.0 * pi / 2.0), pt1(0.0))[0] == Catch::Approx(-pi / 2.0).margin(1e-12));
    CHECK_THROWS_AS(line.local_lift(pt1(pi), pt1(0.0)), Error);

    CoveringChart k3 = CoveringChart::k_fold_circle(3);
    double lifted = k3.local_lift(pt1(0.1), pt1(two_pi * 2.0))[0];
    CHECK(lifted == Catch::Approx(0.1 + two_pi * 2.0).margin(1e-12));

    CoveringChart plane = CoveringChart::plane_over_torus();
    TargetPoint got = plane.local_lift(pt2(0.2, 0.3), pt2(two_pi * 3.0, -two_pi * 2.0));
    CHECK(got[0] == Catch::Approx(0.2 + two_pi * 3.0).margin(1e-12));
    CHECK(got[1] == Catch::Approx(0.3 - two_pi * 2.0).margin(1e-12));
}

TEST_CASE("deck actions") {
    CoveringChart line = CoveringChart::line_over_circle();
    CHECK(line.deck_apply({1, 0}, pt1(0.5))[0] == Catch::Approx(0.5 + two_pi));
    CHECK(line.deck_apply({0, 0}, pt1(0.5))[0] == 0.5);
    CoveringChart k3 = CoveringChart::k_fold_circle(3);
    CHECK(k3.deck_apply({2, 0}, pt1(3.0 * pi))[0] == Catch::Approx(std::fmod(3.0 * pi + 4.0 * pi, 6.0 * pi)));
    CHECK_THROWS_AS(k3.deck_apply({3, 0}, pt1(0.0)), Error);
    CHECK_THROWS_AS(k3.deck_apply({-1, 0}, pt1(0.0)), Error);
}

TEST_CASE("deck group law") {
    SplitMix64 rng(11);
    for (const auto& cov :
         {CoveringChart::line_over_circle(), CoveringChart::k_fold_circle(4), CoveringChart::plane_over_torus()}) {
        for (int c = 0; c < 200; ++c) {
            DeckElement a = random_deck(rng, cov), b = random_deck(rng, cov);
            TargetPoint x = random_total_point(rng, cov);
            TargetPoint lhs = cov.deck_apply(a, cov.deck_apply(b, x));
            TargetPoint rhs = cov.deck_apply(cov.deck_compose(a, b), x);
            CHECK(cov.total().distance(lhs, rhs) <= 1e-9);
        }
    }
}

TEST_CASE("sheet-wise isometry below the injectivity radius") {
    SplitMix64 rng(13);
    for (const auto& cov :
         {CoveringChart::line_over_circle(), CoveringChart::k_fold_circle(3), CoveringChart::plane_over_torus()}) {
        const double inj = cov.base().injectivity_radius();
        int checked = 0;
        while (checked < 10000) {
            TargetPoint x = random_total_point(rng, cov);
            TargetPoint y = x;
            // nearby second point
            y[0] += rng.uniform(-inj, inj);
            if (cov.total().dim() == 2) y[1] += rng.uniform(-inj, inj);
            y = cov.total().canonical(y);
            double dt = cov.total().distance(x, y);
            if (dt > inj) continue;
            ++checked;
            double db = cov.base().distance(cov.project(x), cov.project(y));
            CHECK(std::abs(dt - db) <= 1e-12);
        }
    }
}

TEST_CASE("deck transformations are isometries") {
    SplitMix64 rng(17);
    for (const auto& cov :
         {CoveringChart::line_over_circle(), CoveringChart::k_fold_circle(5), CoveringChart::plane_over_torus()}) {
        for (int c = 0; c < 1000; ++c) {
            TargetPoint x = random_total_point(rng, cov);
            TargetPoint y = random_total_point(rng, cov);
            DeckElement tau = random_deck(rng, cov);
            double before = cov.total().distance(x, y);
            double after = cov.total().distance(cov.deck_apply(tau, x), cov.deck_apply(tau, y));
            CHECK(std::abs(before - after) <= 1e-12 * std::max(1.0, before));
        }
    }
}

TEST_CASE("deck actions commute with the projection") {
    SplitMix64 rng(19);
    for (const auto& cov :
         {CoveringChart::line_over_circle(), CoveringChart::k_fold_circle(3), CoveringChart::plane_over_torus()}) {
        for (int c = 0; c < 500; ++c) {
            TargetPoint x = random_total_point(rng, cov);
            DeckElement tau = random_deck(rng, cov);
            double d = cov.base().distance(cov.project(cov.deck_apply(tau, x)), cov.project(x));
            CHECK(d <= 1e-9);
        }
    }
}

TEST_CASE("lift of own projection is the identity") {
    SplitMix64 rng(23);
    for (const auto& cov :
         {CoveringChart::line_over_circle(), CoveringChart::k_fold_circle(3), CoveringChart::plane_over_torus()}) {
        for (int c = 0; c < 500; ++c) {
            TargetPoint x = cov.total().canonical(random_total_point(rng, cov));
            TargetPoint back = cov.local_lift(cov.project(x), x);
            CHECK(cov.total().distance(back, x) <= 1e-12);
        }
    }
}

TEST_CASE("covering ids") {
    CHECK(CoveringChart::from_id("r-over-s1").family() == CoveringFamily::LineOverCircle);
    CHECK(CoveringChart::from_id("kfold:7").sheets() == 7);
    CHECK(CoveringChart::from_id("r2-over-t2").family() == CoveringFamily::PlaneOverTorus);
    CHECK_THROWS_AS(CoveringChart::from_id("moebius"), Error);
    CHECK(CoveringChart::k_fold_circle(3).id() == "kfold:3");
}

TEST_CASE("stored invariants are closed-form") {
    CoveringChart k3 = CoveringChart::k_fold_circle(3);
    CHECK(k3.base().injectivity_radius() == Catch::Approx(pi));
    CHECK(k3.base().diameter() == Catch::Approx(pi));
    CHECK(k3.total().diameter() == Catch::Approx(3.0 * pi));
    CHECK(std::isinf(CoveringChart::line_over_circle().total().diameter()));
    CoveringChart plane = CoveringChart::plane_over_torus();
    CHECK(plane.base().injectivity_radius() == Catch::Approx(pi));
}
