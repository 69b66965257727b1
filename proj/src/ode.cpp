#include "catena/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace catena {

namespace {

constexpr double kMaxAlphaPerStep = 0.25;  // steeper turns get locally bisected

struct Deriv {
    double alpha, tension, x, y;
};

inline Deriv rhs(const LoadSpec& spec, const StringState& st) {
    const LoadSample f = evaluate(spec, st.alpha);
    return {f.f_n / st.tension, f.f_t, std::cos(st.alpha), std::sin(st.alpha)};
}

inline StringState advance(const StringState& st, const Deriv& d, double h) {
    return {st.s + h, st.alpha + h * d.alpha, st.tension + h * d.tension, st.x + h * d.x,
            st.y + h * d.y};
}

inline StringState rk4_step(const LoadSpec& spec, const StringState& st, double h) {
    const Deriv k1 = rhs(spec, st);
    const Deriv k2 = rhs(spec, advance(st, k1, 0.5 * h));
    const Deriv k3 = rhs(spec, advance(st, k2, 0.5 * h));
    const Deriv k4 = rhs(spec, advance(st, k3, h));
    StringState out = st;
    out.s += h;
    out.alpha += h / 6.0 * (k1.alpha + 2.0 * k2.alpha + 2.0 * k3.alpha + k4.alpha);
    out.tension += h / 6.0 * (k1.tension + 2.0 * k2.tension + 2.0 * k3.tension + k4.tension);
    out.x += h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    out.y += h / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
    return out;
}

inline bool state_ok(const StringState& st, double floor) {
    return std::isfinite(st.alpha) && std::isfinite(st.tension) && std::isfinite(st.x) &&
           std::isfinite(st.y) && st.tension > floor;
}

// Advance one macro step of width h, locally bisecting wherever the slope
// turns too fast or tension hits the floor. Returns the termination to
// apply, or ReachedEnd to continue.
Termination guarded_step(const LoadSpec& spec, StringState& st, double h, double floor,
                         int depth) {
    const StringState trial = rk4_step(spec, st, h);
    const bool violent = !state_ok(trial, floor) ||
                         std::fabs(trial.alpha - st.alpha) > kMaxAlphaPerStep;
    if (!violent) {
        st = trial;
        return Termination::ReachedEnd;
    }
    if (depth >= 48) {
        // Step can no longer be resolved: vanished tension is the usual
        // culprit, anything else is a genuine failure.
        if (!std::isfinite(trial.tension) || trial.tension <= floor ||
            st.tension <= 4.0 * floor) {
            return Termination::TensionVanished;
        }
        return Termination::StepFailure;
    }
    Termination t = guarded_step(spec, st, 0.5 * h, floor, depth + 1);
    if (t != Termination::ReachedEnd) return t;
    return guarded_step(spec, st, 0.5 * h, floor, depth + 1);
}

Trajectory integrate_once(const LoadSpec& spec, const StringState& init, double s_max,
                          long n_steps, double sample_ds, double floor) {
    Trajectory traj;
    const double span = s_max - init.s;
    const double h = span / static_cast<double>(n_steps);
    const long stride = std::max<long>(1, std::lround(sample_ds / h));

    traj.states.push_back(init);
    StringState st = init;
    for (long i = 0; i < n_steps; ++i) {
        const Termination t = guarded_step(spec, st, h, floor, 0);
        if (t != Termination::ReachedEnd) {
            if (traj.states.back().s < st.s) traj.states.push_back(st);
            traj.termination = t;
            return traj;
        }
        if (i % stride == stride - 1 || i == n_steps - 1) traj.states.push_back(st);
    }
    traj.termination = Termination::ReachedEnd;
    return traj;
}

double monitor_drift(const Trajectory& traj, ConservedQuantity q) {
    const double q0 = monitor_value(q, traj.front().alpha, traj.front().tension);
    const double scale = std::max(std::fabs(q0), 1e-300);
    double worst = 0.0;
    for (const StringState& st : traj.states) {
        worst = std::max(worst, std::fabs(monitor_value(q, st.alpha, st.tension) - q0));
    }
    return worst / scale;
}

double state_gap(const StringState& a, const StringState& b) {
    double g = std::fabs(a.alpha - b.alpha);
    g = std::max(g, std::fabs(a.tension - b.tension) / (1.0 + std::fabs(a.tension)));
    g = std::max(g, std::fabs(a.x - b.x));
    g = std::max(g, std::fabs(a.y - b.y));
    return g;
}

// Discrepancy between successive refinements; large when they disagree on
// how the run ends.
double richardson_gap(const Trajectory& a, const Trajectory& b, double span) {
    if (a.termination != b.termination) return 1.0;
    double g = state_gap(a.back(), b.back());
    g = std::max(g, std::fabs(a.back().s - b.back().s) / span);
    return g;
}

}  // namespace

ConservedQuantity invariant_monitor(const LoadSpec& spec) {
    if (spec.pure_g() || spec.pure_p()) return ConservedQuantity::HorizontalTension;
    if (spec.pure_w() || spec.pure_h()) return ConservedQuantity::TensionMagnitude;
    return ConservedQuantity::None;
}

double monitor_value(ConservedQuantity q, double alpha, double tension) {
    switch (q) {
        case ConservedQuantity::HorizontalTension:
            return tension * std::cos(alpha);
        case ConservedQuantity::TensionMagnitude:
            return tension;
        case ConservedQuantity::None:
            break;
    }
    throw std::invalid_argument("no conserved quantity for this load");
}

Trajectory integrate_ivp(const LoadSpec& spec, const StringState& init, double s_max,
                         const IntegrateOptions& options) {
    if (!(init.tension > 0.0)) throw std::invalid_argument("initial tension must be positive");
    if (!(s_max > init.s)) throw std::invalid_argument("s_max must exceed the initial arclength");

    const double span = s_max - init.s;
    const double sample_ds = options.sample_ds > 0.0 ? options.sample_ds : span / 1000.0;
    long n = options.initial_steps > 0
                 ? options.initial_steps
                 : std::max<long>(512, static_cast<long>(std::ceil(span / sample_ds)));

    const ConservedQuantity q = invariant_monitor(spec);
    Trajectory traj = integrate_once(spec, init, s_max, n, sample_ds, options.tension_floor);
    if (options.max_refinements <= 0) return traj;  // fixed-step evaluation

    for (int round = 0; round < options.max_refinements; ++round) {
        if (q != ConservedQuantity::None) {
            if (monitor_drift(traj, q) < options.tol) return traj;
            n *= 2;
            traj = integrate_once(spec, init, s_max, n, sample_ds, options.tension_floor);
        } else {
            Trajectory fine =
                integrate_once(spec, init, s_max, 2 * n, sample_ds, options.tension_floor);
            const double gap = richardson_gap(traj, fine, span);
            n *= 2;
            traj = std::move(fine);
            if (gap < options.tol) return traj;
        }
    }
    if (traj.termination == Termination::ReachedEnd) {
        // Accuracy target unmet at the smallest allowed step.
        traj.termination = Termination::StepFailure;
    }
    return traj;
}

Trajectory integrate_ivp(const LoadSpec& spec, const StringState& init, double s_max,
                         double tol) {
    IntegrateOptions options;
    options.tol = tol;
    return integrate_ivp(spec, init, s_max, options);
}

StripeLocation stripe_index(double alpha, const CriticalSet& cs) {
    StripeLocation loc;
    constexpr double kOnRootTol = 1e-9;
    int idx = 0;
    for (std::size_t i = 0; i < cs.roots.size(); ++i) {
        if (std::fabs(alpha - cs.roots[i]) <= kOnRootTol) {
            loc.on_root = true;
            loc.index = static_cast<int>(i);
            return loc;
        }
        if (alpha > cs.roots[i]) idx = static_cast<int>(i) + 1;
    }
    loc.index = idx;
    return loc;
}

}  // namespace catena
