#pragma once

#include <vector>

#include "catena/critical.hpp"
#include "catena/ode.hpp"

namespace catena {

enum class ClosedFormKind { Catenary, Parabola, Circle, WindCatenary };

/// Closed-form solution of the boundary value problem under a single
/// classical load, sampled by arclength. The shape parameter is the
/// horizontal tension H for catenary/parabola and the (constant) tension
/// T for the wind catenary and the circle.
struct ClosedFormSolution {
    ClosedFormKind kind = ClosedFormKind::Catenary;
    double shape_parameter = 0.0;
    std::vector<StringState> states;
};

/// Solve the single-load BVP in closed form for supports at equal height.
///
/// catenary / wind: bisection on sinh(u)/u = L/x0, parameter = i*x0/(2u);
/// parabola: bisection on the parabola arclength equation for H;
/// circle: chord equation 2R sin(L/(2R)) = x0, tension T = h*R. Circle
/// arcs are restricted to at most a half-circle (L/x0 <= pi/2).
///
/// Gravity sags the catenary below the chord; the opposing loads bow the
/// parabola, circle and wind catenary above it.
ClosedFormSolution analytic_bvp(ClosedFormKind kind, double intensity,
                                const BoundaryData& boundary, int samples = 1001);

}  // namespace catena
