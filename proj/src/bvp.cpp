#include "catena/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace catena {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Residual {
    double rx = 0.0;
    double ry = 0.0;
    bool complete = false;  // integration reached s = L

    double norm() const { return std::hypot(rx, ry); }
};

// Endpoint misfit of the IVP started at (alpha0, T0). Early-terminated
// runs still report the misfit of wherever they stopped; they can never
// be classified Smooth.
Residual shoot_residual(const LoadSpec& spec, const BoundaryData& b, const ShootGuess& g,
                        const ShootOptions& opt) {
    StringState init;
    init.alpha = g.alpha0;
    init.tension = g.tension0;
    IntegrateOptions io;
    io.initial_steps = static_cast<int>(opt.steps);
    io.max_refinements = 0;  // fixed-step evaluation inside the Newton loop
    io.sample_ds = b.length; // endpoints only
    io.tension_floor = opt.tension_floor;
    const Trajectory traj = integrate_ivp(spec, init, b.length, io);
    Residual r;
    r.rx = traj.back().x - b.x0;
    r.ry = traj.back().y - b.y0;
    r.complete = traj.termination != Termination::TensionVanished &&
                 std::fabs(traj.back().s - b.length) < 1e-12 * b.length + 1e-300;
    return r;
}

}  // namespace

std::vector<Vec2> trajectory_polyline(const Trajectory& trajectory) {
    std::vector<Vec2> pts;
    pts.reserve(trajectory.states.size());
    for (const StringState& st : trajectory.states) pts.push_back({st.x, st.y});
    return pts;
}

bool self_intersects(std::span<const Vec2> polyline) {
    if (polyline.size() < 3) return false;

    auto orient = [](const Vec2& a, const Vec2& b, const Vec2& c) {
        const double v = (b - a).cross(c - a);
        return (v > 0.0) - (v < 0.0);
    };
    auto on_segment = [](const Vec2& a, const Vec2& b, const Vec2& c) {
        // c collinear with ab: does it lie within the box?
        return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
               std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
    };
    auto segments_meet = [&](const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
        const int o1 = orient(a, b, c);
        const int o2 = orient(a, b, d);
        const int o3 = orient(c, d, a);
        const int o4 = orient(c, d, b);
        if (o1 != o2 && o3 != o4) return true;
        if (o1 == 0 && on_segment(a, b, c)) return true;
        if (o2 == 0 && on_segment(a, b, d)) return true;
        if (o3 == 0 && on_segment(c, d, a)) return true;
        if (o4 == 0 && on_segment(c, d, b)) return true;
        return false;
    };

    // Collapse zero-length segments.
    std::vector<Vec2> pts;
    pts.reserve(polyline.size());
    pts.push_back(polyline[0]);
    for (const Vec2& p : polyline.subspan(1)) {
        if ((p - pts.back()).norm2() > 0.0) pts.push_back(p);
    }
    const std::size_t n = pts.size();
    if (n < 3) return false;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Vec2& a = pts[i];
        const Vec2& b = pts[i + 1];
        const double xlo = std::min(a.x, b.x), xhi = std::max(a.x, b.x);
        const double ylo = std::min(a.y, b.y), yhi = std::max(a.y, b.y);
        for (std::size_t j = i + 2; j + 1 < n; ++j) {
            const Vec2& c = pts[j];
            const Vec2& d = pts[j + 1];
            // Adjacent segments share an endpoint; skip the pair (0, last)
            // only if the polyline is closed there.
            if (i == 0 && j + 2 == n && (pts.front() - pts.back()).norm2() == 0.0) continue;
            if (std::max(c.x, d.x) < xlo || std::min(c.x, d.x) > xhi ||
                std::max(c.y, d.y) < ylo || std::min(c.y, d.y) > yhi) {
                continue;
            }
            if (segments_meet(a, b, c, d)) return true;
        }
    }
    return false;
}

bool chord_tangent_exists(const Trajectory& trajectory, double alpha0, double tol) {
    if (trajectory.states.empty()) return false;
    auto wrapped = [alpha0](double a) {
        return std::remainder(a - alpha0, 2.0 * kPi);
    };
    double prev = wrapped(trajectory.states.front().alpha);
    if (std::fabs(prev) < tol) return true;
    for (std::size_t i = 1; i < trajectory.states.size(); ++i) {
        const double cur = wrapped(trajectory.states[i].alpha);
        if (std::fabs(cur) < tol) return true;
        // A sign change of the wrapped difference is a crossing, provided it
        // is not a wrap-around artifact.
        if ((cur > 0.0) != (prev > 0.0) && std::fabs(cur - prev) < kPi) return true;
        prev = cur;
    }
    return false;
}

BvpSolution shoot(const LoadSpec& spec, const BoundaryData& boundary, ShootGuess guess,
                  const ShootOptions& options) {
    if (!(guess.tension0 > 0.0)) throw std::invalid_argument("initial tension must be positive");

    BvpSolution sol;
    sol.unknowns = guess;

    Residual r = shoot_residual(spec, boundary, guess, options);
    double best_norm = r.norm();
    const double accept = options.accept_scale * std::max(1.0, boundary.x0);
    const double target = 0.01 * accept;

    int stagnant = 0;
    for (int iter = 0; iter < options.max_iterations && best_norm > target; ++iter) {
        // Finite-difference Jacobian d(rx,ry)/d(alpha0, T0).
        const double da = options.fd_step * std::max(1.0, std::fabs(guess.alpha0));
        const double dt = options.fd_step * std::max(0.01, std::fabs(guess.tension0));
        ShootGuess ga{guess.alpha0 + da, guess.tension0};
        ShootGuess gt{guess.alpha0, guess.tension0 + dt};
        const Residual ra = shoot_residual(spec, boundary, ga, options);
        const Residual rt = shoot_residual(spec, boundary, gt, options);

        const double j11 = (ra.rx - r.rx) / da, j12 = (rt.rx - r.rx) / dt;
        const double j21 = (ra.ry - r.ry) / da, j22 = (rt.ry - r.ry) / dt;
        const double det = j11 * j22 - j12 * j21;
        if (!std::isfinite(det) || std::fabs(det) < 1e-300) break;

        const double step_a = (j22 * r.rx - j12 * r.ry) / det;
        const double step_t = (j11 * r.ry - j21 * r.rx) / det;
        if (!std::isfinite(step_a) || !std::isfinite(step_t)) break;

        // Damped update: halve until the residual decreases.
        bool advanced = false;
        for (double lambda = 1.0; lambda > 1e-4; lambda *= 0.5) {
            ShootGuess trial{guess.alpha0 - lambda * step_a, guess.tension0 - lambda * step_t};
            if (!(trial.tension0 > options.tension_floor * 10.0)) continue;
            const Residual rr = shoot_residual(spec, boundary, trial, options);
            if (rr.norm() < (1.0 - 1e-4 * lambda) * best_norm) {
                guess = trial;
                r = rr;
                best_norm = rr.norm();
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            if (++stagnant >= options.stagnation_limit) break;
        } else {
            stagnant = 0;
        }
    }

    sol.unknowns = guess;
    sol.residual = best_norm;
    if (!(best_norm < accept) || !r.complete) {
        sol.status = BvpStatus::NotFound;
        return sol;
    }

    // Converged: re-integrate densely for classification and export.
    StringState init;
    init.alpha = guess.alpha0;
    init.tension = guess.tension0;
    IntegrateOptions io;
    io.tol = 1e-10;
    io.tension_floor = options.tension_floor;
    sol.trajectory = integrate_ivp(spec, init, boundary.length, io);
    const StringState& end = sol.trajectory.back();
    sol.residual = std::hypot(end.x - boundary.x0, end.y - boundary.y0);

    if (sol.trajectory.termination != Termination::ReachedEnd || !(sol.residual < accept)) {
        sol.status = BvpStatus::NotFound;
        return sol;
    }
    sol.status = self_intersects(trajectory_polyline(sol.trajectory))
                     ? BvpStatus::SelfIntersecting
                     : BvpStatus::Smooth;
    return sol;
}

BvpSolution find_smooth_solution(const LoadSpec& spec, const BoundaryData& boundary,
                                 const MultistartOptions& options) {
    const CriticalSet cs = find_critical_roots(spec);
    const double alpha0 = boundary.alpha0();

    // Candidate stripes: the invariant stripe(s) the boundary slope lies in,
    // extended by pi into unbounded sentinel stripes.
    std::vector<std::pair<double, double>> stripes;
    if (cs.empty()) {
        stripes.push_back({alpha0 - kPi, alpha0 + kPi});
    } else {
        std::vector<double> fences;
        fences.push_back(cs.roots.front() - kPi);
        fences.insert(fences.end(), cs.roots.begin(), cs.roots.end());
        fences.push_back(cs.roots.back() + kPi);
        for (std::size_t i = 0; i + 1 < fences.size(); ++i) {
            if (fences[i] <= alpha0 && alpha0 <= fences[i + 1]) {
                stripes.push_back({fences[i], fences[i + 1]});
            }
        }
    }

    std::vector<double> tensions;
    tensions.reserve(options.tension_count);
    for (int i = 0; i < options.tension_count; ++i) {
        const double f = options.tension_count == 1
                             ? 0.5
                             : static_cast<double>(i) / (options.tension_count - 1);
        tensions.push_back(options.tension_lo *
                           std::pow(options.tension_hi / options.tension_lo, f));
    }

    BvpSolution best;
    best.status = BvpStatus::NotFound;
    best.residual = std::numeric_limits<double>::infinity();
    bool have_self_intersecting = false;
    BvpSolution best_crossing;

    for (const auto& [lo, hi] : stripes) {
        for (int ia = 0; ia < options.alphas_per_stripe; ++ia) {
            const double a = lo + (hi - lo) * (ia + 0.5) / options.alphas_per_stripe;
            for (double t0 : tensions) {
                BvpSolution sol = shoot(spec, boundary, {a, t0}, options.shoot);
                if (sol.status == BvpStatus::Smooth) {
                    return sol;  // guesses are ordered deterministically
                }
                if (sol.status == BvpStatus::SelfIntersecting) {
                    if (!have_self_intersecting || sol.residual < best_crossing.residual) {
                        best_crossing = std::move(sol);
                        have_self_intersecting = true;
                    }
                } else if (sol.residual < best.residual) {
                    best = std::move(sol);
                }
            }
        }
    }
    if (have_self_intersecting) return best_crossing;
    return best;
}

}  // namespace catena
