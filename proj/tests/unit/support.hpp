#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "catena/chain.hpp"
#include "catena/loads.hpp"
#include "catena/vec2.hpp"

namespace testsupport {

constexpr double kPi = 3.14159265358979323846;

// Five-point central difference, O(h^4).
template <typename F>
double deriv5(F&& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

// Random load spec drawn from the Table-1 style patterns plus general
// mixtures. Intensities stay moderate so derivative bounds hold.
inline catena::LoadSpec random_spec(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mag(0.2, 3.0);
    std::uniform_int_distribution<int> pattern(0, 7);
    switch (pattern(rng)) {
        case 0: return {mag(rng), 0, 0, 0};
        case 1: return {0, mag(rng), 0, 0};
        case 2: return {0, 0, mag(rng), 0};
        case 3: return {0, 0, 0, mag(rng)};
        case 4: return {mag(rng), mag(rng), 0, 0};
        case 5: return {mag(rng), 0, mag(rng), 0};
        case 6: return {mag(rng), 0, 0, mag(rng)};
        default: return {mag(rng), mag(rng), 0, mag(rng)};
    }
}

// Straight-ish random open chain with bounded kinks; pair distances stay
// clear of the repulsion cutoff shell so finite differences are smooth.
inline catena::ChainState random_chain_state(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> turn(-0.45, 0.45);
    std::uniform_real_distribution<double> stretch(0.9, 1.1);
    std::uniform_real_distribution<double> vel(-0.3, 0.3);

    std::vector<catena::Vec2> pts;
    pts.push_back({0.0, 0.0});
    double heading = turn(rng);
    for (int i = 1; i < n; ++i) {
        heading += turn(rng);
        const double r = stretch(rng);
        pts.push_back(pts.back() + catena::Vec2{r * std::cos(heading), r * std::sin(heading)});
    }
    catena::ChainState st = catena::make_chain(std::move(pts), 1e-3);
    for (int i = 0; i < n; ++i) st.velocities[i] = {vel(rng), vel(rng)};
    return st;
}

inline double solve_catenary_u(double length_over_span) {
    double lo = 1e-12, hi = 1.0;
    while (std::sinh(hi) / hi < length_over_span) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (std::sinh(mid) / mid < length_over_span ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace testsupport
