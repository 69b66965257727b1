#include <doctest.h>

#include <cmath>

#include "catena/analytic.hpp"
#include "catena/bvp.hpp"
#include "support.hpp"

using namespace catena;
using testsupport::kPi;

TEST_CASE("self-intersection detection") {
    SUBCASE("straight chord") {
        std::vector<Vec2> pts;
        for (int i = 0; i < 10; ++i) pts.push_back({i / 9.0, 0.0});
        CHECK(!self_intersects(pts));
    }
    SUBCASE("figure eight") {
        const std::vector<Vec2> pts{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
        CHECK(self_intersects(pts));
    }
    SUBCASE("semicircle") {
        std::vector<Vec2> pts;
        for (int i = 0; i <= 50; ++i) {
            const double a = kPi * i / 50.0;
            pts.push_back({0.5 - 0.5 * std::cos(a), 0.5 * std::sin(a)});
        }
        CHECK(!self_intersects(pts));
    }
    SUBCASE("zero-length segments are skipped") {
        const std::vector<Vec2> pts{{0, 0}, {0, 0}, {1, 0}, {1, 0}, {2, 0}};
        CHECK(!self_intersects(pts));
    }
    SUBCASE("hairpin crossing") {
        const std::vector<Vec2> pts{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, -1}};
        CHECK(self_intersects(pts));
    }
}

TEST_CASE("chord tangent existence") {
    SUBCASE("catenary has a horizontal tangent at the sag point") {
        Trajectory traj;
        for (int i = 0; i <= 100; ++i) {
            StringState st;
            st.s = i / 100.0;
            st.alpha = -0.8 + 1.6 * i / 100.0;
            traj.states.push_back(st);
        }
        CHECK(chord_tangent_exists(traj, 0.0, 1e-3));
    }
    SUBCASE("monotone quarter-circle crosses pi/4") {
        Trajectory traj;
        for (int i = 0; i <= 100; ++i) {
            StringState st;
            st.alpha = kPi / 2.0 * i / 100.0;
            st.s = i;
            traj.states.push_back(st);
        }
        CHECK(chord_tangent_exists(traj, kPi / 4.0, 1e-3));
    }
    SUBCASE("slope range excluding the chord slope") {
        Trajectory traj;
        for (int i = 0; i <= 100; ++i) {
            StringState st;
            st.alpha = 0.5 + 0.5 * i / 100.0;
            st.s = i;
            traj.states.push_back(st);
        }
        CHECK(!chord_tangent_exists(traj, 0.0, 1e-3));
    }
}

TEST_CASE("shooting onto the hydrostatic semicircle") {
    const BoundaryData b(kPi / 2.0, 1.0);
    const LoadSpec spec(0, 0, 0, 1);
    // The arc bows upward, so the left support slope is near +pi/2.
    const BvpSolution sol = shoot(spec, b, {1.4, 0.5});
    REQUIRE(sol.status == BvpStatus::Smooth);
    CHECK(sol.residual < 1e-8);

    const ClosedFormSolution oracle = analytic_bvp(ClosedFormKind::Circle, 1.0, b);
    // Compare positions at matched arclengths.
    double worst = 0.0;
    for (const StringState& st : sol.trajectory.states) {
        const double m = kPi / 2.0;  // semicircle half-angle
        const double radius = 0.5;
        const double alpha = m - st.s / radius;
        const double x = radius * (std::sin(m) - std::sin(alpha));
        const double y = radius * (std::cos(alpha) - std::cos(m));
        worst = std::max(worst, std::hypot(st.x - x, st.y - y));
    }
    CHECK(worst < 1e-6);
    CHECK(oracle.shape_parameter == doctest::Approx(sol.unknowns.tension0).epsilon(1e-7));
}

TEST_CASE("shooting converges to the catenary from a perturbed guess") {
    const BoundaryData b(1.2, 1.0);
    const LoadSpec spec(1, 0, 0, 0);
    const ClosedFormSolution oracle = analytic_bvp(ClosedFormKind::Catenary, 1.0, b);

    const double alpha0_true = oracle.states.front().alpha;
    const double t0_true = oracle.states.front().tension;
    const BvpSolution sol = shoot(spec, b, {alpha0_true * 1.1, t0_true * 1.1});
    REQUIRE(sol.status == BvpStatus::Smooth);

    // Interpolate the oracle at the trajectory arclengths.
    double worst = 0.0;
    std::size_t k = 0;
    for (const StringState& st : sol.trajectory.states) {
        while (k + 1 < oracle.states.size() && oracle.states[k + 1].s < st.s) ++k;
        const StringState& a = oracle.states[k];
        const StringState& bb = oracle.states[std::min(k + 1, oracle.states.size() - 1)];
        const double span = bb.s - a.s;
        const double f = span > 0 ? (st.s - a.s) / span : 0.0;
        const double x = a.x + f * (bb.x - a.x);
        const double y = a.y + f * (bb.y - a.y);
        worst = std::max(worst, std::hypot(st.x - x, st.y - y));
    }
    // Linear interpolation of the oracle dominates this gap.
    CHECK(worst < 1e-5);
    CHECK(sol.unknowns.alpha0 == doctest::Approx(alpha0_true).epsilon(1e-7));
    CHECK(sol.unknowns.tension0 == doctest::Approx(t0_true).epsilon(1e-7));
}

TEST_CASE("multistart verdicts across the critical interval") {
    const BoundaryData b(2.0, 1.0);
    SUBCASE("below the gravity-pressure interval: smooth") {
        const BvpSolution sol = find_smooth_solution(LoadSpec(1, 0, 0, 0.4), b);
        CHECK(sol.status == BvpStatus::Smooth);
        CHECK(sol.residual < 1e-8 * std::max(1.0, b.x0));
        CHECK(chord_tangent_exists(sol.trajectory, b.alpha0(), 1e-3));
    }
    SUBCASE("inside the gravity-pressure interval: never smooth") {
        const BvpSolution sol = find_smooth_solution(LoadSpec(1, 0, 0, 0.7), b);
        CHECK(sol.status != BvpStatus::Smooth);
    }
    SUBCASE("inside the gravity-bridge interval: never smooth") {
        const BvpSolution sol = find_smooth_solution(LoadSpec(1, 1.5, 0, 0), b);
        CHECK(sol.status != BvpStatus::Smooth);
    }
}

TEST_CASE("converse coverage below the pressure interval") {
    for (double lx : {1.5, 2.0, 3.0}) {
        const BoundaryData b(lx, 1.0);
        const auto [lo, hi] = critical_ratio_interval(LoadPair::GravityPressure, b);
        const BvpSolution sol =
            find_smooth_solution(LoadSpec(1, 0, 0, 0.95 * lo), b);
        CHECK(sol.status == BvpStatus::Smooth);
        CHECK(chord_tangent_exists(sol.trajectory, b.alpha0(), 1e-3));
    }
}

TEST_CASE("shoot rejects non-positive initial tension") {
    CHECK_THROWS_AS(shoot(LoadSpec(1, 0, 0, 0), BoundaryData(1.2, 1.0), {0.0, 0.0}),
                    std::invalid_argument);
}
