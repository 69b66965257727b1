#include "catena/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace catena {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRootFnTol = 1e-12;      // |f_n| accepted as zero at a root
constexpr double kDoubleDerivTol = 1e-6;  // |f_n'| below this flags a double root
constexpr int kScanGrid = 4096;
constexpr double kRootMergeTol = 1e-9;

double fn(const LoadSpec& spec, double a) { return evaluate(spec, a).f_n; }

// Bisect a sign change of f on [lo, hi] down to floating resolution.
double bisect(const LoadSpec& spec, double lo, double hi, double flo) {
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = fn(spec, mid);
        if (fmid == 0.0) return mid;
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Bisect a sign change of f_n' to locate an extremum of f_n.
double bisect_derivative(const LoadSpec& spec, double lo, double hi, double dlo) {
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double dmid = fn_derivative(spec, mid);
        if (dmid == 0.0) return mid;
        if ((dmid > 0.0) == (dlo > 0.0)) {
            lo = mid;
            dlo = dmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void add_root(std::vector<double>& roots, double r) {
    // Identify +pi with -pi.
    if (r >= kPi - 1e-12) r -= 2.0 * kPi;
    for (double existing : roots) {
        if (std::fabs(existing - r) < kRootMergeTol) return;
    }
    roots.push_back(r);
}

CriticalSet finalize(const LoadSpec& spec, std::vector<double> roots) {
    std::sort(roots.begin(), roots.end());
    CriticalSet cs;
    cs.roots = std::move(roots);
    cs.multiplicity.reserve(cs.roots.size());
    for (double r : cs.roots) {
        cs.multiplicity.push_back(std::fabs(fn_derivative(spec, r)) < kDoubleDerivTol
                                      ? Multiplicity::Double
                                      : Multiplicity::Simple);
    }
    return cs;
}

}  // namespace

BoundaryData::BoundaryData(double length_, double x0_, double y0_)
    : length(length_), x0(x0_), y0(y0_) {
    if (!std::isfinite(length) || !std::isfinite(x0) || !std::isfinite(y0)) {
        throw std::invalid_argument("boundary data must be finite");
    }
    if (x0 <= 0.0) throw std::invalid_argument("right support must have x0 > 0");
    if (length <= chord()) {
        throw std::invalid_argument("string length must exceed the support chord");
    }
}

double BoundaryData::chord() const { return std::hypot(x0, y0); }

double BoundaryData::alpha0() const { return std::atan2(y0, x0); }

CriticalSet scan_critical_roots(const LoadSpec& spec) {
    if (spec.all_zero()) return {};  // f_n identically zero: no isolated roots

    std::vector<double> roots;
    const double step = 2.0 * kPi / kScanGrid;

    double a_prev = -kPi;
    double f_prev = fn(spec, a_prev);
    double d_prev = fn_derivative(spec, a_prev);
    if (std::fabs(f_prev) < kRootFnTol) add_root(roots, a_prev);

    for (int i = 1; i <= kScanGrid; ++i) {
        const double a = -kPi + i * step;
        const double f = fn(spec, a);
        const double d = fn_derivative(spec, a);

        if (std::fabs(f) < kRootFnTol) {
            add_root(roots, a);
        } else if ((f > 0.0) != (f_prev > 0.0) && std::fabs(f_prev) >= kRootFnTol) {
            add_root(roots, bisect(spec, a_prev, a, f_prev));
        }
        // Extremum in the cell: f_n may touch zero without a sign change.
        if ((d > 0.0) != (d_prev > 0.0)) {
            const double ae = bisect_derivative(spec, a_prev, a, d_prev);
            if (std::fabs(fn(spec, ae)) < 1e-10) add_root(roots, ae);
        }

        a_prev = a;
        f_prev = f;
        d_prev = d;
    }
    return finalize(spec, std::move(roots));
}

CriticalSet find_critical_roots(const LoadSpec& spec) {
    if (spec.all_zero()) return {};

    std::vector<double> roots;
    const double q = spec.p + spec.w;  // bridge and wind enter f_n identically

    if (spec.h == 0.0) {
        if (spec.g > 0.0 && q == 0.0) {
            // Pure gravity: cos a = 0.
            roots = {-kPi / 2.0, kPi / 2.0};
        } else if (spec.g == 0.0 && q > 0.0) {
            // Pure projected load: |cos a| cos a = 0 (double zeros).
            roots = {-kPi / 2.0, kPi / 2.0};
        } else {
            // Gravity against bridge/wind: cos a (g - q |cos a|) = 0.
            roots = {-kPi / 2.0, kPi / 2.0};
            if (q >= spec.g) {
                const double theta = std::acos(spec.g / q);
                add_root(roots, theta);
                add_root(roots, -theta);
                add_root(roots, kPi - theta);
                add_root(roots, -(kPi - theta));
            }
        }
        return finalize(spec, std::move(roots));
    }

    if (q == 0.0) {
        if (spec.g == 0.0) return {};  // pure pressure: f_n = -h, no roots
        // Gravity against pressure: cos a = h/g.
        if (spec.h <= spec.g) {
            const double theta = std::acos(spec.h / spec.g);
            add_root(roots, theta);
            add_root(roots, -theta);
        }
        return finalize(spec, std::move(roots));
    }

    // General mixture: no closed form applies.
    return scan_critical_roots(spec);
}

std::optional<RelevantRoots> relevant_roots(const CriticalSet& cs, double alpha0) {
    for (std::size_t k = 0; k + 1 < cs.roots.size(); ++k) {
        const double lo = cs.roots[k];
        const double hi = cs.roots[k + 1];
        if (lo <= alpha0 && alpha0 <= hi && hi - lo < kPi) {
            RelevantRoots rel;
            rel.alpha_lo = lo;
            rel.alpha_hi = hi;
            rel.delta = hi - lo;
            rel.phi = 0.5 * (lo + hi);
            return rel;
        }
    }
    return std::nullopt;
}

NonexistenceCheck smooth_nonexistence(const BoundaryData& boundary, const RelevantRoots& rel) {
    NonexistenceCheck out;
    const double phi = rel.phi;
    const double x0_rot = boundary.x0 * std::cos(phi) + boundary.y0 * std::sin(phi);
    const double alpha_rot = rel.alpha_lo - phi;  // equals -delta/2
    const double c = std::cos(alpha_rot);
    if (c <= 0.0) {
        // Half-width of pi/2 or more: the length bound degenerates and the
        // predicate is vacuously true.
        out.nonexistent = true;
        out.degenerate = true;
        out.critical_length = std::numeric_limits<double>::infinity();
        return out;
    }
    out.critical_length = x0_rot / c;
    out.nonexistent = boundary.length > out.critical_length;
    return out;
}

LoadSpec pair_load(LoadPair pair, double gravity, double ratio) {
    switch (pair) {
        case LoadPair::GravityBridge:
            return LoadSpec(gravity, ratio * gravity, 0.0, 0.0);
        case LoadPair::GravityWind:
            return LoadSpec(gravity, 0.0, ratio * gravity, 0.0);
        case LoadPair::GravityPressure:
            return LoadSpec(gravity, 0.0, 0.0, ratio * gravity);
    }
    throw std::invalid_argument("unknown load pair");
}

std::pair<double, double> critical_ratio_interval(LoadPair pair, const BoundaryData& boundary) {
    if (boundary.y0 != 0.0) {
        throw std::invalid_argument("critical ratio intervals require supports at equal height");
    }
    const double lx = boundary.length / boundary.x0;
    switch (pair) {
        case LoadPair::GravityBridge:
        case LoadPair::GravityWind:
            return {1.0, lx};
        case LoadPair::GravityPressure:
            return {1.0 / lx, 1.0};
    }
    throw std::invalid_argument("unknown load pair");
}

std::vector<BifurcationPoint> bifurcation_sweep(LoadPair pair, std::span<const double> ratios) {
    std::vector<BifurcationPoint> out;
    out.reserve(ratios.size());
    for (double r : ratios) {
        if (!std::isfinite(r) || r < 0.0) {
            throw std::invalid_argument("load ratios must be finite and non-negative");
        }
        BifurcationPoint bp;
        bp.ratio = r;
        bp.critical = find_critical_roots(pair_load(pair, 1.0, r));
        out.push_back(std::move(bp));
    }
    return out;
}

LimitGeometry limiting_geometry(LoadPair pair, const BoundaryData& boundary, LimitEnd end) {
    if (boundary.y0 != 0.0) {
        throw std::invalid_argument("limiting geometries require supports at equal height");
    }
    const double L = boundary.length;
    const double x0 = boundary.x0;
    LimitGeometry out;

    if (pair == LoadPair::GravityPressure) {
        if (end == LimitEnd::Upper) {
            // Self-contact sets in before h/g reaches 1; no kinked limit shape.
            out.constructible = false;
            return out;
        }
        // Downward wedge: two legs of length L/2 at slopes -/+ arccos(x0/L).
        const double beta = std::acos(x0 / L);
        out.constructible = true;
        out.points = {{0.0, 0.0}, {0.5 * x0, -0.5 * L * std::sin(beta)}, {x0, 0.0}};
        return out;
    }

    // Bridge and wind behave identically here.
    if (end == LimitEnd::Upper) {
        const double beta = std::acos(x0 / L);
        out.constructible = true;
        out.points = {{0.0, 0.0}, {0.5 * x0, 0.5 * L * std::sin(beta)}, {x0, 0.0}};
        return out;
    }
    // Lower end (p -> g from above): flat segment raised on two vertical legs.
    const double d = 0.5 * (L - x0);
    out.constructible = true;
    out.points = {{0.0, 0.0}, {0.0, d}, {x0, d}, {x0, 0.0}};
    return out;
}

}  // namespace catena
