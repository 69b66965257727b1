#pragma once

#include <span>
#include <vector>

#include "catena/critical.hpp"
#include "catena/ode.hpp"
#include "catena/vec2.hpp"

namespace catena {

enum class BvpStatus { Smooth, SelfIntersecting, NotFound };

/// Unknown initial conditions of the shooting problem.
struct ShootGuess {
    double alpha0 = 0.0;
    double tension0 = 1.0;
};

struct BvpSolution {
    BvpStatus status = BvpStatus::NotFound;
    Trajectory trajectory;   ///< converged path (empty when NotFound early)
    ShootGuess unknowns;     ///< initial conditions the solver settled on
    double residual = 0.0;   ///< |(x(L), y(L)) - (x0, y0)| at the solution
};

struct ShootOptions {
    int max_iterations = 60;
    int stagnation_limit = 8;       ///< bail after this many non-improving steps
    double fd_step = 1e-6;          ///< relative finite-difference step
    double accept_scale = 1e-9;     ///< Smooth requires residual < accept_scale*max(1,x0)
    long steps = 2048;              ///< fixed RK4 steps per residual evaluation
    double tension_floor = 1e-9;
};

/// Damped Newton iteration on the 2-vector residual (x(L)-x0, y(L)-y0)
/// with finite-difference Jacobian. Converged trajectories are classified
/// Smooth only when they reach s = L with tension above the floor, meet
/// the residual bound and are free of polyline self-intersection.
BvpSolution shoot(const LoadSpec& spec, const BoundaryData& boundary, ShootGuess guess,
                  const ShootOptions& options = {});

struct MultistartOptions {
    int alphas_per_stripe = 8;
    int tension_count = 6;          ///< log-spaced initial tensions
    double tension_lo = 1e-2;
    double tension_hi = 1e2;
    ShootOptions shoot;
};

/// Multistart shooting over the invariant stripes compatible with the
/// boundary slope: the best Smooth result wins, else a SelfIntersecting
/// one if some converged run crosses itself, else NotFound.
BvpSolution find_smooth_solution(const LoadSpec& spec, const BoundaryData& boundary,
                                 const MultistartOptions& options = {});

/// True iff two non-adjacent segments of the polyline intersect
/// (orientation-test based; zero-length segments are skipped).
bool self_intersects(std::span<const Vec2> polyline);

/// True iff some sampled slope matches alpha0 modulo 2*pi within tol, or
/// the wrapped difference changes sign between consecutive samples.
bool chord_tangent_exists(const Trajectory& trajectory, double alpha0, double tol);

/// Positions of the trajectory samples as a polyline.
std::vector<Vec2> trajectory_polyline(const Trajectory& trajectory);

}  // namespace catena
