#include "catena/analytic.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace catena {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSolveTol = 1e-13;

// Bisection for a continuous monotone function with a sign change on [lo, hi].
double bisect_monotone(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw std::invalid_argument("root not bracketed");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (std::fabs(fmid) < kSolveTol || 0.5 * (hi - lo) < 1e-16 * (1.0 + std::fabs(mid))) {
            return mid;
        }
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Shared cosh-curve sampler for the gravity and wind catenaries. The two
// differ only in the sign of the bow (gravity sags, wind bows up) and in
// the tension profile.
ClosedFormSolution sample_catenary(ClosedFormKind kind, double intensity,
                                   const BoundaryData& b, int samples) {
    const double ratio = b.length / b.x0;
    // sinh(u)/u is 1 at u=0 and increases without bound.
    double hi = 1.0;
    while (std::sinh(hi) / hi < ratio) hi *= 2.0;
    const double u =
        bisect_monotone([ratio](double t) { return std::sinh(t) / t - ratio; }, 1e-12, hi);

    const double param = intensity * b.x0 / (2.0 * u);  // H for gravity, T for wind
    const double c = intensity / param;                 // curvature scale g/H resp. w/T
    const double sinh_u = std::sinh(u);
    const double sign = kind == ClosedFormKind::Catenary ? 1.0 : -1.0;

    ClosedFormSolution sol;
    sol.kind = kind;
    sol.shape_parameter = param;
    sol.states.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        const double s = b.length * static_cast<double>(i) / (samples - 1);
        const double q = c * s - sinh_u;  // sinh of the scaled abscissa
        StringState st;
        st.s = s;
        st.x = 0.5 * b.x0 + std::asinh(q) / c;
        st.y = sign * (std::sqrt(1.0 + q * q) - std::cosh(u)) / c;
        st.alpha = sign * std::atan(q);
        st.tension = kind == ClosedFormKind::Catenary ? param * std::sqrt(1.0 + q * q) : param;
        sol.states.push_back(st);
    }
    return sol;
}

ClosedFormSolution sample_parabola(double intensity, const BoundaryData& b, int samples) {
    // Arclength of y = (a/2) x (x0 - x) as a function of a = p/H.
    const double half = 0.5 * b.x0;
    auto arclen = [half](double a) {
        const double z = a * half;
        return half * std::sqrt(1.0 + z * z) + std::asinh(z) / a;
    };
    double hi = 1.0 / half;
    while (arclen(hi) < b.length) hi *= 2.0;
    const double a =
        bisect_monotone([&](double t) { return arclen(t) - b.length; }, 1e-14, hi);

    ClosedFormSolution sol;
    sol.kind = ClosedFormKind::Parabola;
    sol.shape_parameter = intensity / a;  // H

    // Arclength measured from the left support.
    auto s_of_x = [&](double x) {
        auto F = [&](double z) { return 0.5 * (z * std::sqrt(1.0 + z * z) + std::asinh(z)); };
        return (F(a * half) - F(a * (half - x))) / a;
    };
    sol.states.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        const double s = b.length * static_cast<double>(i) / (samples - 1);
        // Invert s(x) by Newton iteration; ds/dx = sqrt(1 + y'^2) >= 1.
        double x = b.x0 * static_cast<double>(i) / (samples - 1);
        for (int it = 0; it < 60; ++it) {
            const double z = a * (half - x);
            const double step = (s_of_x(x) - s) / std::sqrt(1.0 + z * z);
            x -= step;
            if (std::fabs(step) < 1e-15 * (1.0 + b.x0)) break;
        }
        const double z = a * (half - x);  // y'(x) = z
        StringState st;
        st.s = s;
        st.x = x;
        st.y = 0.5 * a * x * (b.x0 - x);
        st.alpha = std::atan(z);
        st.tension = sol.shape_parameter * std::sqrt(1.0 + z * z);
        sol.states.push_back(st);
    }
    // Pin the endpoints exactly.
    sol.states.front().x = 0.0;
    sol.states.front().y = 0.0;
    sol.states.back().x = b.x0;
    sol.states.back().y = 0.0;
    return sol;
}

ClosedFormSolution sample_circle(double intensity, const BoundaryData& b, int samples) {
    if (b.length / b.x0 > kPi / 2.0 + 1e-12) {
        throw std::invalid_argument("circle arcs beyond a half-circle are not supported");
    }
    // Half-angle m from sin(m)/m = x0/L; sin(m)/m decreases from 1 on (0, pi].
    const double target = b.x0 / b.length;
    const double m = bisect_monotone(
        [target](double t) { return std::sin(t) / t - target; }, 1e-12, kPi / 2.0 + 1e-9);
    const double radius = b.length / (2.0 * m);

    ClosedFormSolution sol;
    sol.kind = ClosedFormKind::Circle;
    sol.shape_parameter = intensity * radius;  // T = h R
    sol.states.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        const double s = b.length * static_cast<double>(i) / (samples - 1);
        const double alpha = m - s / radius;  // runs from +m down to -m
        StringState st;
        st.s = s;
        st.alpha = alpha;
        st.tension = sol.shape_parameter;
        st.x = radius * (std::sin(m) - std::sin(alpha));
        st.y = radius * (std::cos(alpha) - std::cos(m));
        sol.states.push_back(st);
    }
    return sol;
}

}  // namespace

ClosedFormSolution analytic_bvp(ClosedFormKind kind, double intensity,
                                const BoundaryData& boundary, int samples) {
    if (boundary.y0 != 0.0) {
        throw std::invalid_argument("closed forms require supports at equal height");
    }
    if (!(intensity > 0.0) || !std::isfinite(intensity)) {
        throw std::invalid_argument("load intensity must be positive");
    }
    if (samples < 2) throw std::invalid_argument("need at least two samples");

    switch (kind) {
        case ClosedFormKind::Catenary:
        case ClosedFormKind::WindCatenary:
            return sample_catenary(kind, intensity, boundary, samples);
        case ClosedFormKind::Parabola:
            return sample_parabola(intensity, boundary, samples);
        case ClosedFormKind::Circle:
            return sample_circle(intensity, boundary, samples);
    }
    throw std::invalid_argument("unknown closed form kind");
}

}  // namespace catena
