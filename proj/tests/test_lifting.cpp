#include <catch_amalgamated.hpp>

#include <cmath>

#include "liftlab/energy.hpp"
#include "liftlab/families.hpp"
#include "liftlab/field.hpp"
#include "liftlab/lifting.hpp"

using namespace liftlab;

namespace {
const double pi = std::numbers::pi;
const CoveringChart line = CoveringChart::line_over_circle();

std::vector<TargetPoint> circle_loop(int k, int samples) {
    std::vector<TargetPoint> out;
    for (int i = 0; i <= samples; ++i)
        out.push_back(line.base().canonical(pt1(two_pi * k * static_cast<double>(i) / samples)));
    return out;
}
}  // namespace

TEST_CASE("path lifting unwinds a full loop") {
    std::vector<TargetPoint> vals;
    for (int k = 0; k <= 16; ++k) vals.push_back(line.base().canonical(pt1(two_pi * k / 16.0)));
    auto lifted = lift_path(vals, line, pt1(0.0));
    CHECK(std::abs(lifted.back()[0] - lifted.front()[0] - two_pi) <= 1e-9);

    auto constant = lift_path(std::vector<TargetPoint>(10, pt1(1.0)), line, pt1(1.0 + two_pi * 3.0));
    for (auto& v : constant) CHECK(v[0] == Catch::Approx(1.0 + two_pi * 3.0).margin(1e-12));

    std::vector<TargetPoint> jump{pt1(0.0), pt1(pi)};
    CHECK_THROWS_AS(lift_path(jump, line, pt1(0.0)), StepTooLargeError);
}

TEST_CASE("field lifting recovers a smooth phase up to one deck element") {
    GridDomain dom = make_domain(DomainKind::Cube, 2, 24, 1.0);
    Field phi = make_real_field(dom, [](double x, double y) {
        return 2.0 * std::sin(two_pi * x) * std::cos(two_pi * y) + 3.0 * x + two_pi * 2.0;
    });
    Field base = project_field(line, phi);
    LiftResult lr = lift_field(base, line, 0, pt1(phi.values[0][0]));
    CHECK(lr.max_holonomy_residual <= 1e-9);
    for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(line.base().distance(line.project(lr.lifted.values[i]), base.values[i]) <= 1e-12);

    // the lift equals phi after one global deck shift
    auto align = deck_align(lr.lifted, phi, line);
    CHECK(align.related);

    // constant field lifts to a constant with zero residual
    Field c = make_constant_field(dom, line.base(), pt1(0.5));
    LiftResult cr = lift_field(c, line, 3, pt1(0.5));
    CHECK(cr.max_holonomy_residual == 0.0);
    for (auto& v : cr.lifted.values) CHECK(v[0] == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("winding fields around the torus obstruct the lift") {
    GridDomain dom = make_domain(DomainKind::Torus, 1, 64, 1.0);
    Field u{dom, line.base(), {}};
    for (std::size_t i = 0; i < dom.size(); ++i)
        u.values.push_back(line.base().canonical(pt1(two_pi * dom.point(i)[0])));
    try {
        lift_field(u, line, 0, u.values[0]);
        FAIL("expected a holonomy obstruction");
    } catch (const HolonomyError& e) {
        CHECK(e.residual() >= two_pi - 1e-6);
        CHECK(e.cycle().size() >= 2);
        CHECK(e.cycle().front() == e.cycle().back());
    }
}

TEST_CASE("edges at the injectivity radius are rejected") {
    GridDomain dom = make_domain(DomainKind::Interval, 1, 16, 1.0);
    Field u{dom, line.base(), {}};
    for (std::size_t i = 0; i < dom.size(); ++i) u.values.push_back(pt1(i < 8 ? 0.0 : pi));
    CHECK_THROWS_AS(lift_field(u, line, 0, pt1(0.0)), StepTooLargeError);
}

TEST_CASE("winding numbers") {
    CHECK(winding(circle_loop(-2, 64)).count == -2);
    CHECK(winding(circle_loop(1, 64)).count == 1);
    CHECK(winding(circle_loop(7, 256)).count == 7);
    CHECK(winding(circle_loop(7, 256)).residual < 1e-6);
    CHECK(winding(std::vector<TargetPoint>(32, pt1(1.2))).count == 0);
}

TEST_CASE("deck alignment dichotomy") {
    GridDomain dom = make_domain(DomainKind::Interval, 1, 64, 1.0);
    Field a = make_real_field(dom, [](double x, double) { return 1.5 * std::sin(two_pi * x) + 0.4; });
    Field b = a;
    for (auto& v : b.values) v[0] += two_pi;
    auto r1 = deck_align(a, b, line);
    CHECK(r1.related);
    CHECK(r1.tau.j0 == 1);

    auto r0 = deck_align(a, a, line);
    CHECK(r0.related);
    CHECK(r0.tau.j0 == 0);

    Field half = a;
    for (std::size_t i = 0; i < half.size() / 2; ++i) half.values[i][0] += two_pi;
    auto r2 = deck_align(a, half, line);
    CHECK_FALSE(r2.related);
    CHECK(r2.mismatch_fraction == Catch::Approx(0.5));

    Field other = make_real_field(dom, [](double x, double) { return std::cos(two_pi * x); });
    CHECK_THROWS_AS(deck_align(a, other, line), Error);
}

TEST_CASE("chain rule residual and energy transport") {
    GridDomain dom = make_domain(DomainKind::Cube, 2, 20, 1.0);
    Field phi = make_real_field(dom, [](double x, double y) { return std::sin(two_pi * x) + 2.0 * y; });
    Field base = project_field(line, phi);
    LiftResult lr = lift_field(base, line, 0, pt1(phi.values[0][0]));

    CHECK(chain_rule_residual(base, lr.lifted, line) <= 1e-12);
    double d_lift = dirichlet(lr.lifted, 2.0).value;
    double d_base = dirichlet(base, 2.0).value;
    CHECK(d_lift == Catch::Approx(d_base).epsilon(1e-12));
    double d_lift3 = dirichlet(lr.lifted, 3.0).value;
    double d_base3 = dirichlet(base, 3.0).value;
    CHECK(d_lift3 == Catch::Approx(d_base3).epsilon(1e-12));

    // a deck shift at a single point is detected as a large residual
    Field corrupted = lr.lifted;
    corrupted.values[7][0] += two_pi;
    CHECK(chain_rule_residual(base, corrupted, line) >= two_pi - pi);
}

TEST_CASE("seed independence up to deck transformation") {
    GridDomain dom = make_domain(DomainKind::Torus, 2, 16, 1.0);
    Field phi = make_real_field(dom, [](double x, double y) {
        return 1.2 * std::sin(two_pi * x) * std::sin(two_pi * y) + 0.9;
    });
    Field base = project_field(line, phi);
    LiftResult a = lift_field(base, line, 0, pt1(phi.values[0][0]));
    LiftResult b = lift_field(base, line, dom.size() / 2, pt1(base.values[dom.size() / 2][0] + two_pi * 5.0));
    auto align = deck_align(a.lifted, b.lifted, line);
    CHECK(align.related);
    CHECK(align.tau.j0 == 5);

    // truncated energy is invariant under the global deck shift
    double ea = truncated(a.lifted, 0.75, 2.0, 0.0).value;
    double eb = truncated(b.lifted, 0.75, 2.0, 0.0).value;
    CHECK(ea == Catch::Approx(eb).epsilon(1e-12));
}

TEST_CASE("grid-line sections reproduce the path lift exactly") {
    GridDomain dom = make_domain(DomainKind::Cube, 2, 18, 1.0);
    Field phi = make_real_field(dom, [](double x, double y) { return 2.5 * std::sin(two_pi * x) + 1.3 * y; });
    Field base = project_field(line, phi);
    LiftResult lr = lift_field(base, line, 0, pt1(phi.values[0][0]));
    for (int axis = 0; axis < 2; ++axis) {
        for (const auto& sec : dom.line_sections(axis)) {
            std::vector<TargetPoint> vals;
            for (auto i : sec.indices) vals.push_back(base.values[i]);
            auto lifted = lift_path(vals, line, lr.lifted.values[sec.indices.front()]);
            for (std::size_t k = 0; k < sec.indices.size(); ++k)
                CHECK(lifted[k][0] == lr.lifted.values[sec.indices[k]][0]);  // bit exact
        }
    }
}

TEST_CASE("lifting through the k-fold circle and the plane over the torus") {
    CoveringChart k3 = CoveringChart::k_fold_circle(3);
    GridDomain dom = make_domain(DomainKind::Interval, 1, 96, 1.0);
    Field phi = make_real_field(dom, [](double x, double) { return 5.0 * std::sin(two_pi * x); });
    Field base = project_field(k3, as_total_field(k3, phi));
    LiftResult lr = lift_field(base, k3, 0, as_total_field(k3, phi).values[0]);
    CHECK(lr.max_holonomy_residual <= 1e-9);
    CHECK(chain_rule_residual(base, lr.lifted, k3) <= 1e-12);

    CoveringChart plane = CoveringChart::plane_over_torus();
    GridDomain dom2 = make_domain(DomainKind::Cube, 2, 16, 1.0);
    Field vecphi{dom2, TargetGeometry::real_plane(), {}};
    for (std::size_t i = 0; i < dom2.size(); ++i) {
        auto p = dom2.point(i);
        vecphi.values.push_back(pt2(3.0 * p[0] + std::sin(two_pi * p[1]), 8.0 * p[1]));
    }
    Field base2 = project_field(plane, vecphi);
    LiftResult lr2 = lift_field(base2, plane, 0, vecphi.values[0]);
    CHECK(lr2.max_holonomy_residual <= 1e-9);
    auto align = deck_align(lr2.lifted, vecphi, plane);
    CHECK(align.related);
}
