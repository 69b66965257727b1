#include <doctest.h>

#include <cmath>
#include <random>

#include "catena/critical.hpp"
#include "support.hpp"

using namespace catena;
using testsupport::kPi;

namespace {

void check_roots(const CriticalSet& cs, const std::vector<double>& expected, double tol) {
    REQUIRE(cs.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(std::fabs(cs.roots[i] - expected[i]) < tol);
    }
}

}  // namespace

TEST_CASE("critical roots of the classical loads") {
    check_roots(find_critical_roots(LoadSpec(1, 0, 0, 0)), {-kPi / 2, kPi / 2}, 1e-12);
    check_roots(find_critical_roots(LoadSpec(0, 1, 0, 0)), {-kPi / 2, kPi / 2}, 1e-12);
    check_roots(find_critical_roots(LoadSpec(0, 0, 1, 0)), {-kPi / 2, kPi / 2}, 1e-12);
    CHECK(find_critical_roots(LoadSpec(0, 0, 0, 1)).empty());

    // Projected loads touch zero at +-pi/2: saddle-type roots.
    const CriticalSet pure_p = find_critical_roots(LoadSpec(0, 1, 0, 0));
    CHECK(pure_p.multiplicity[0] == Multiplicity::Double);
    const CriticalSet pure_g = find_critical_roots(LoadSpec(1, 0, 0, 0));
    CHECK(pure_g.multiplicity[0] == Multiplicity::Simple);
}

TEST_CASE("critical roots of the combined loads") {
    SUBCASE("gravity-bridge, p/g = 2") {
        check_roots(find_critical_roots(LoadSpec(1, 2, 0, 0)),
                    {-2 * kPi / 3, -kPi / 2, -kPi / 3, kPi / 3, kPi / 2, 2 * kPi / 3}, 1e-12);
    }
    SUBCASE("gravity-pressure, h/g = 0.5") {
        check_roots(find_critical_roots(LoadSpec(1, 0, 0, 0.5)), {-kPi / 3, kPi / 3}, 1e-12);
    }
    SUBCASE("gravity-pressure with h > g has no roots") {
        CHECK(find_critical_roots(LoadSpec(1, 0, 0, 1.5)).empty());
    }
    SUBCASE("all roots satisfy f_n = 0") {
        for (const LoadSpec& spec :
             {LoadSpec(1, 2, 0, 0), LoadSpec(1, 0, 1.4, 0), LoadSpec(1, 0, 0, 0.3),
              LoadSpec(2, 1.5, 0.4, 0.2)}) {
            const CriticalSet cs = find_critical_roots(spec);
            for (double r : cs.roots) CHECK(std::fabs(evaluate(spec, r).f_n) < 1e-10);
        }
    }
}

TEST_CASE("closed-form and scanned roots agree on the classic combinations") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> mag(0.2, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        LoadSpec spec(0, 0, 0, 0);
        switch (trial % 7) {
            case 0: spec = LoadSpec(mag(rng), 0, 0, 0); break;
            case 1: spec = LoadSpec(0, mag(rng), 0, 0); break;
            case 2: spec = LoadSpec(0, 0, mag(rng), 0); break;
            case 3: spec = LoadSpec(0, 0, 0, mag(rng)); break;
            case 4: spec = LoadSpec(mag(rng), mag(rng), 0, 0); break;
            case 5: spec = LoadSpec(mag(rng), 0, mag(rng), 0); break;
            default: spec = LoadSpec(mag(rng), 0, 0, mag(rng)); break;
        }
        // Exactly balanced ratios collapse root pairs; keep clear of them.
        const double q = spec.p + spec.w + spec.h;
        if (spec.g > 0 && q > 0 && std::fabs(q / spec.g - 1.0) < 0.02) continue;

        const CriticalSet closed = find_critical_roots(spec);
        const CriticalSet scanned = scan_critical_roots(spec);
        REQUIRE(closed.size() == scanned.size());
        for (std::size_t i = 0; i < closed.size(); ++i) {
            CHECK(std::fabs(closed.roots[i] - scanned.roots[i]) < 1e-9);
            CHECK(closed.multiplicity[i] == scanned.multiplicity[i]);
        }
    }
}

TEST_CASE("relevant roots bracket the boundary slope") {
    SUBCASE("gravity-pressure pair around alpha0 = 0") {
        const auto rel = relevant_roots(find_critical_roots(LoadSpec(1, 0, 0, 0.5)), 0.0);
        REQUIRE(rel.has_value());
        CHECK(rel->alpha_lo == doctest::Approx(-kPi / 3).epsilon(1e-12));
        CHECK(rel->alpha_hi == doctest::Approx(kPi / 3).epsilon(1e-12));
        CHECK(rel->delta == doctest::Approx(2 * kPi / 3).epsilon(1e-12));
        CHECK(rel->phi == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("pure gravity: stripe width pi fails the strict bound") {
        CHECK(!relevant_roots(find_critical_roots(LoadSpec(1, 0, 0, 0)), 0.0).has_value());
    }
    SUBCASE("empty critical set") {
        CHECK(!relevant_roots(CriticalSet{}, 0.3).has_value());
    }
}

TEST_CASE("nonexistence predicate for gravity-pressure boundaries") {
    const BoundaryData boundary(2.0, 1.0);
    SUBCASE("h/g = 0.6: threshold 1/0.6 below L") {
        const auto rel = relevant_roots(find_critical_roots(LoadSpec(1, 0, 0, 0.6)), 0.0);
        REQUIRE(rel.has_value());
        const NonexistenceCheck c = smooth_nonexistence(boundary, *rel);
        CHECK(c.nonexistent);
        CHECK(!c.degenerate);
        CHECK(c.critical_length == doctest::Approx(1.0 / 0.6).epsilon(1e-12));
    }
    SUBCASE("h/g = 0.5: threshold equals L, strict inequality fails") {
        const auto rel = relevant_roots(find_critical_roots(LoadSpec(1, 0, 0, 0.5)), 0.0);
        REQUIRE(rel.has_value());
        CHECK(!smooth_nonexistence(boundary, *rel).nonexistent);
    }
    SUBCASE("near-flat pair on a short string") {
        const BoundaryData b(1.05, 1.0);
        const auto rel = relevant_roots(find_critical_roots(LoadSpec(1, 0, 0, 0.99)), 0.0);
        REQUIRE(rel.has_value());
        CHECK(smooth_nonexistence(b, *rel).nonexistent);
    }
    SUBCASE("hand-built pair of half-width >= pi/2 is degenerate") {
        RelevantRoots rel;
        rel.alpha_lo = -1.6;
        rel.alpha_hi = 1.6;
        rel.delta = 3.2;
        rel.phi = 0.0;
        const NonexistenceCheck c = smooth_nonexistence(boundary, rel);
        CHECK(c.nonexistent);
        CHECK(c.degenerate);
    }
}

TEST_CASE("critical ratio intervals match the corollaries") {
    const auto gp = critical_ratio_interval(LoadPair::GravityBridge, BoundaryData(2, 1));
    CHECK(gp.first == doctest::Approx(1.0));
    CHECK(gp.second == doctest::Approx(2.0));

    const auto gh = critical_ratio_interval(LoadPair::GravityPressure, BoundaryData(2, 1));
    CHECK(gh.first == doctest::Approx(0.5));
    CHECK(gh.second == doctest::Approx(1.0));

    const auto gw = critical_ratio_interval(LoadPair::GravityWind, BoundaryData(3, 1));
    CHECK(gw.first == doctest::Approx(1.0));
    CHECK(gw.second == doctest::Approx(3.0));

    CHECK_THROWS_AS(critical_ratio_interval(LoadPair::GravityWind, BoundaryData(3, 1, 0.5)),
                    std::invalid_argument);
}

TEST_CASE("nonexistence holds exactly inside the corollary interval (g-h)") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> x0d(0.5, 3.0);
    std::uniform_real_distribution<double> stretch(1.05, 5.0);

    for (int trial = 0; trial < 100; ++trial) {
        const double x0 = x0d(rng);
        const BoundaryData b(stretch(rng) * x0, x0);
        const auto [lo, hi] = critical_ratio_interval(LoadPair::GravityPressure, b);

        auto predicate = [&](double ratio) {
            const auto rel =
                relevant_roots(find_critical_roots(LoadSpec(1, 0, 0, ratio)), b.alpha0());
            if (!rel) return false;
            return smooth_nonexistence(b, *rel).nonexistent;
        };

        CHECK(predicate(lo * (1.0 + 1e-12)));
        CHECK(predicate(0.5 * (lo + hi)));
        CHECK(predicate(hi * (1.0 - 1e-12)));
        CHECK(!predicate(lo * (1.0 - 1e-12)));
        CHECK(!predicate(hi * (1.0 + 1e-12)));
        CHECK(!predicate(0.5 * lo));
    }
}

TEST_CASE("bifurcation sweep tracks the saddle-node structure") {
    SUBCASE("gravity-bridge at ratio 1: double root at zero") {
        const std::vector<double> grid{1.0};
        const auto table = bifurcation_sweep(LoadPair::GravityBridge, grid);
        REQUIRE(table.size() == 1);
        bool found = false;
        for (std::size_t i = 0; i < table[0].critical.size(); ++i) {
            if (std::fabs(table[0].critical.roots[i]) < 1e-9) {
                found = true;
                CHECK(table[0].critical.multiplicity[i] == Multiplicity::Double);
            }
        }
        CHECK(found);
    }
    SUBCASE("gravity-pressure at ratio 1: single root at zero") {
        const std::vector<double> grid{1.0};
        const auto table = bifurcation_sweep(LoadPair::GravityPressure, grid);
        REQUIRE(table.size() == 1);
        REQUIRE(table[0].critical.size() == 1);
        CHECK(std::fabs(table[0].critical.roots[0]) < 1e-12);
    }
    SUBCASE("gravity-pressure at ratio 0.5 includes +-pi/3") {
        const std::vector<double> grid{0.5};
        const auto table = bifurcation_sweep(LoadPair::GravityPressure, grid);
        check_roots(table[0].critical, {-kPi / 3, kPi / 3}, 1e-12);
    }
}

TEST_CASE("limiting geometries") {
    const BoundaryData b(2.0, 1.0);
    SUBCASE("gravity-pressure lower end: downward wedge") {
        const LimitGeometry g = limiting_geometry(LoadPair::GravityPressure, b, LimitEnd::Lower);
        REQUIRE(g.constructible);
        REQUIRE(g.points.size() == 3);
        CHECK(g.points[1].x == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(g.points[1].y == doctest::Approx(-std::sqrt(3.0) / 2.0).epsilon(1e-14));
    }
    SUBCASE("gravity-bridge upper end: upward wedge") {
        const LimitGeometry g = limiting_geometry(LoadPair::GravityBridge, b, LimitEnd::Upper);
        REQUIRE(g.constructible);
        CHECK(g.points[1].y == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-14));
    }
    SUBCASE("gravity-bridge lower end: raised flat segment") {
        const LimitGeometry g = limiting_geometry(LoadPair::GravityBridge, b, LimitEnd::Lower);
        REQUIRE(g.constructible);
        REQUIRE(g.points.size() == 4);
        CHECK(g.points[1].y == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(g.points[2].y == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("gravity-pressure upper end cannot be constructed") {
        CHECK(!limiting_geometry(LoadPair::GravityPressure, b, LimitEnd::Upper).constructible);
    }
    SUBCASE("length and endpoints over random boundaries") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> x0d(0.5, 3.0);
        std::uniform_real_distribution<double> stretch(1.05, 4.0);
        for (int i = 0; i < 50; ++i) {
            const double x0 = x0d(rng);
            const BoundaryData bb(stretch(rng) * x0, x0);
            for (LoadPair pair : {LoadPair::GravityBridge, LoadPair::GravityWind,
                                  LoadPair::GravityPressure}) {
                for (LimitEnd end : {LimitEnd::Lower, LimitEnd::Upper}) {
                    const LimitGeometry g = limiting_geometry(pair, bb, end);
                    if (!g.constructible) continue;
                    double len = 0.0;
                    for (std::size_t k = 0; k + 1 < g.points.size(); ++k) {
                        len += (g.points[k + 1] - g.points[k]).norm();
                    }
                    CHECK(len == doctest::Approx(bb.length).epsilon(1e-12));
                    CHECK(g.points.front().norm() == 0.0);
                    CHECK((g.points.back() - Vec2{bb.x0, 0.0}).norm() == 0.0);
                }
            }
        }
    }
}

TEST_CASE("boundary data validation") {
    CHECK_THROWS_AS(BoundaryData(1.0, 1.0), std::invalid_argument);   // length == chord
    CHECK_THROWS_AS(BoundaryData(2.0, -1.0), std::invalid_argument);  // x0 <= 0
    const BoundaryData b(2.0, 1.0, 1.0);
    CHECK(b.alpha0() == doctest::Approx(kPi / 4).epsilon(1e-12));
}
