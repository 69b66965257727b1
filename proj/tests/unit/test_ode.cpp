#include <doctest.h>

#include <cmath>
#include <random>

#include "catena/ode.hpp"
#include "support.hpp"

using namespace catena;
using testsupport::kPi;

TEST_CASE("pure pressure traces a circle of radius T/h") {
    // f_n = -h, so from alpha = 0 the slope falls to -pi/2 over a quarter
    // turn; the path lies on the circle of radius 1 about (0,-1).
    const LoadSpec spec(0, 0, 0, 1);
    StringState init;
    init.alpha = 0.0;
    init.tension = 1.0;
    const Trajectory traj = integrate_ivp(spec, init, kPi / 2.0, 1e-10);

    REQUIRE(traj.termination == Termination::ReachedEnd);
    CHECK(traj.back().alpha == doctest::Approx(-kPi / 2.0).epsilon(1e-8));
    CHECK(traj.back().tension == doctest::Approx(1.0).epsilon(1e-12));
    for (const StringState& st : traj.states) {
        CHECK(std::fabs(st.x * st.x + (st.y + 1.0) * (st.y + 1.0) - 1.0) < 1e-7);
    }
}

TEST_CASE("pure gravity conserves the horizontal tension") {
    const LoadSpec spec(1, 0, 0, 0);
    StringState init;
    init.alpha = 0.0;
    init.tension = 1.0;
    const Trajectory traj = integrate_ivp(spec, init, 3.0, 1e-10);
    REQUIRE(traj.termination == Termination::ReachedEnd);

    for (const StringState& st : traj.states) {
        CHECK(st.tension * std::cos(st.alpha) == doctest::Approx(1.0).epsilon(1e-10));
    }
    // At the sample where alpha = pi/3 the tension is 1/cos(pi/3) = 2.
    bool bracketed = false;
    for (std::size_t i = 1; i < traj.states.size(); ++i) {
        const StringState& a = traj.states[i - 1];
        const StringState& b = traj.states[i];
        if ((a.alpha - kPi / 3.0) * (b.alpha - kPi / 3.0) <= 0.0) {
            const double f = (kPi / 3.0 - a.alpha) / (b.alpha - a.alpha);
            const double t_interp = a.tension + f * (b.tension - a.tension);
            CHECK(t_interp == doctest::Approx(2.0).epsilon(1e-4));
            bracketed = true;
            break;
        }
    }
    CHECK(bracketed);
}

TEST_CASE("combined load trajectory stays inside its stripe") {
    const LoadSpec spec(1, 0, 0, 0.5);
    StringState init;
    init.alpha = 0.0;
    init.tension = 1.0;
    const Trajectory traj = integrate_ivp(spec, init, 50.0, 1e-8);
    REQUIRE(traj.termination == Termination::ReachedEnd);
    for (const StringState& st : traj.states) {
        CHECK(st.alpha > -kPi / 3.0);
        CHECK(st.alpha < kPi / 3.0);
    }
}

TEST_CASE("invariant monitor selection") {
    CHECK(invariant_monitor(LoadSpec(1, 0, 0, 0)) == ConservedQuantity::HorizontalTension);
    CHECK(invariant_monitor(LoadSpec(0, 2, 0, 0)) == ConservedQuantity::HorizontalTension);
    CHECK(invariant_monitor(LoadSpec(0, 0, 3, 0)) == ConservedQuantity::TensionMagnitude);
    CHECK(invariant_monitor(LoadSpec(0, 0, 0, 1)) == ConservedQuantity::TensionMagnitude);
    CHECK(invariant_monitor(LoadSpec(1, 0, 0, 0.5)) == ConservedQuantity::None);

    CHECK(monitor_value(ConservedQuantity::HorizontalTension, kPi / 3, 2.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(monitor_value(ConservedQuantity::TensionMagnitude, 0.7, 2.5) == 2.5);
    CHECK_THROWS_AS(monitor_value(ConservedQuantity::None, 0, 1), std::invalid_argument);
}

TEST_CASE("conserved quantity drift below tolerance for all pure loads") {
    StringState init;
    init.alpha = 0.25;
    init.tension = 1.3;
    for (const LoadSpec& spec : {LoadSpec(1, 0, 0, 0), LoadSpec(0, 1.4, 0, 0),
                                 LoadSpec(0, 0, 0.8, 0), LoadSpec(0, 0, 0, 1.1)}) {
        const ConservedQuantity q = invariant_monitor(spec);
        const Trajectory traj = integrate_ivp(spec, init, 2.5, 1e-10);
        REQUIRE(traj.termination == Termination::ReachedEnd);
        const double q0 = monitor_value(q, init.alpha, init.tension);
        for (const StringState& st : traj.states) {
            CHECK(std::fabs(monitor_value(q, st.alpha, st.tension) - q0) / std::fabs(q0) <
                  1e-10);
        }
    }
}

TEST_CASE("sampled positions are inextensible") {
    const double tol = 1e-8;
    IntegrateOptions opts;
    opts.tol = tol;
    opts.sample_ds = kPi / 2.0 / 4000.0;

    StringState init;
    init.alpha = 0.0;
    init.tension = 1.0;
    const Trajectory traj = integrate_ivp(LoadSpec(0, 0, 0, 1), init, kPi / 2.0, opts);
    double hops = 0.0;
    for (std::size_t i = 1; i < traj.states.size(); ++i) {
        const double dx = traj.states[i].x - traj.states[i - 1].x;
        const double dy = traj.states[i].y - traj.states[i - 1].y;
        hops += std::hypot(dx, dy);
    }
    const double span = traj.back().s - traj.front().s;
    CHECK(std::fabs(hops - span) < 10.0 * tol);
}

TEST_CASE("smooth trajectories have single-signed curvature") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> a0(-1.2, 1.2);
    std::uniform_real_distribution<double> t0(0.5, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        const LoadSpec spec = testsupport::random_spec(rng);
        if (spec.all_zero()) continue;
        StringState init;
        init.alpha = a0(rng);
        init.tension = t0(rng);
        if (std::fabs(evaluate(spec, init.alpha).f_n) < 1e-6) continue;  // near-critical start
        const Trajectory traj = integrate_ivp(spec, init, 4.0, 1e-8);
        const double sign0 = evaluate(spec, traj.front().alpha).f_n > 0 ? 1.0 : -1.0;
        for (const StringState& st : traj.states) {
            const double fn = evaluate(spec, st.alpha).f_n;
            // Curvature may approach zero near a stripe edge, never cross it.
            CHECK(sign0 * fn >= -1e-12);
        }
    }
}

TEST_CASE("stripe index and invariance") {
    CriticalSet cs;
    cs.roots = {-kPi / 3, kPi / 3};
    cs.multiplicity = {Multiplicity::Simple, Multiplicity::Simple};

    SUBCASE("index lookup") {
        CHECK(stripe_index(0.0, cs).index == 1);
        CHECK(stripe_index(kPi / 2, cs).index == 2);
        CHECK(stripe_index(-3.0, cs).index == 0);
        CHECK(stripe_index(0.0, CriticalSet{}).index == 0);
        CHECK(!stripe_index(0.0, cs).on_root);
        CHECK(stripe_index(kPi / 3, cs).on_root);
    }

    SUBCASE("trajectories never change stripe") {
        std::mt19937_64 rng(97);
        std::uniform_real_distribution<double> a0(-kPi, kPi);
        std::uniform_real_distribution<double> logt(std::log(0.011), std::log(100.0));
        int runs = 0;
        for (int trial = 0; runs < 200 && trial < 400; ++trial) {
            const LoadSpec spec = testsupport::random_spec(rng);
            if (spec.all_zero()) continue;
            const CriticalSet roots = find_critical_roots(spec);
            StringState init;
            init.alpha = a0(rng);
            init.tension = std::exp(logt(rng));
            const StripeLocation start = stripe_index(init.alpha, roots);
            if (start.on_root) continue;
            double margin = kPi;
            for (double r : roots.roots) margin = std::min(margin, std::fabs(init.alpha - r));
            if (margin < 1e-6) continue;

            const Trajectory traj = integrate_ivp(spec, init, init.s + 5.0, 1e-8);
            for (const StringState& st : traj.states) {
                const StripeLocation loc = stripe_index(st.alpha, roots);
                CHECK(!loc.on_root);
                CHECK(loc.index == start.index);
            }
            ++runs;
        }
        CHECK(runs == 200);
    }
}

TEST_CASE("tension vanishes on a draining combined load") {
    // Gravity against strong pressure with a downhill start: f_t < 0 drains
    // the tension to the floor before the arclength runs out.
    const LoadSpec spec(1, 0, 0, 0.9);
    StringState init;
    init.alpha = -1.0;
    init.tension = 0.02;
    const Trajectory traj = integrate_ivp(spec, init, 10.0, 1e-8);
    CHECK(traj.termination == Termination::TensionVanished);
    CHECK(traj.back().tension > 0.0);
    CHECK(traj.back().s < 10.0);
}

TEST_CASE("integration preconditions") {
    StringState init;
    init.tension = 0.0;
    CHECK_THROWS_AS(integrate_ivp(LoadSpec(1, 0, 0, 0), init, 1.0, 1e-8),
                    std::invalid_argument);
    init.tension = 1.0;
    init.s = 2.0;
    CHECK_THROWS_AS(integrate_ivp(LoadSpec(1, 0, 0, 0), init, 1.0, 1e-8),
                    std::invalid_argument);
}

TEST_CASE("trajectory samples have strictly increasing arclength") {
    StringState init;
    init.alpha = 0.1;
    init.tension = 2.0;
    const Trajectory traj = integrate_ivp(LoadSpec(1, 0.4, 0, 0.2), init, 6.0, 1e-9);
    for (std::size_t i = 1; i < traj.states.size(); ++i) {
        CHECK(traj.states[i].s > traj.states[i - 1].s);
    }
}
