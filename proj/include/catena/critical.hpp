#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "catena/loads.hpp"
#include "catena/vec2.hpp"

namespace catena {

enum class Multiplicity { Simple, Double };

/// Sorted roots of f_n(alpha) = 0 on [-pi, pi), with -pi and +pi
/// identified (a root at +pi is reported as -pi).
struct CriticalSet {
    std::vector<double> roots;
    std::vector<Multiplicity> multiplicity;

    std::size_t size() const { return roots.size(); }
    bool empty() const { return roots.empty(); }
};

/// A pair of consecutive critical roots bracketing the boundary slope
/// with separation below pi. Their existence (plus a length condition)
/// rules out smooth solutions of the boundary value problem.
struct RelevantRoots {
    double alpha_lo = 0.0;
    double alpha_hi = 0.0;
    double delta = 0.0;  ///< alpha_hi - alpha_lo, always < pi
    double phi = 0.0;    ///< symmetrising rotation, (alpha_lo + alpha_hi) / 2
};

/// Boundary data of the two-point problem: supports at (0,0) and (x0,y0),
/// string length L strictly longer than the chord.
struct BoundaryData {
    double length = 0.0;
    double x0 = 0.0;
    double y0 = 0.0;

    BoundaryData() = default;
    BoundaryData(double length_, double x0_, double y0_ = 0.0);

    double chord() const;
    /// Boundary slope atan(y0/x0), in (-pi/2, pi/2).
    double alpha0() const;
};

/// All roots of f_n(alpha) = 0 in [-pi, pi). Uses the closed forms for a
/// single load or for gravity paired with one opposing load and falls
/// back to a scan-and-bisect search for general combinations. A root is
/// flagged Double when |f_n'| at the root is below 1e-6.
CriticalSet find_critical_roots(const LoadSpec& spec);

/// Dense root search over [-pi, pi) regardless of load structure:
/// 4096-point grid scan, bisection on sign changes, plus extremum
/// refinement for roots where f_n touches zero.
CriticalSet scan_critical_roots(const LoadSpec& spec);

/// The bracketing pair (alpha_k <= alpha0 <= alpha_{k+1}) with width
/// below pi, if one exists.
std::optional<RelevantRoots> relevant_roots(const CriticalSet& cs, double alpha0);

struct NonexistenceCheck {
    bool nonexistent = false;     ///< no smooth solution free of self-intersection
    bool degenerate = false;      ///< rotated half-width >= pi/2, predicate vacuous
    double critical_length = 0.0; ///< length threshold x0_rot / cos(alpha_rot)
};

/// Nonexistence predicate for smooth solutions: rotate the frame by phi,
/// then no smooth self-intersection-free solution exists iff
/// L > x0_rot / cos(alpha_lo - phi). The inequality is strict; at the
/// threshold the (kinked) limiting geometry takes over.
NonexistenceCheck smooth_nonexistence(const BoundaryData& boundary, const RelevantRoots& rel);

enum class LoadPair { GravityBridge, GravityWind, GravityPressure };

/// Open interval of opposing-to-gravity load ratios with no smooth
/// solution, for supports at equal height: (1, L/x0) for p/g and w/g,
/// (x0/L, 1) for h/g.
std::pair<double, double> critical_ratio_interval(LoadPair pair, const BoundaryData& boundary);

struct BifurcationPoint {
    double ratio = 0.0;
    CriticalSet critical;
};

/// Root sets along a grid of load ratios (gravity fixed at 1), suitable
/// for plotting the saddle-node structure.
std::vector<BifurcationPoint> bifurcation_sweep(LoadPair pair, std::span<const double> ratios);

/// LoadSpec for a given pair at a given opposing/gravity ratio.
LoadSpec pair_load(LoadPair pair, double gravity, double ratio);

enum class LimitEnd { Lower, Upper };

struct LimitGeometry {
    bool constructible = false;
    std::vector<Vec2> points;  ///< polyline from (0,0) to (x0,0), total length L
};

/// Kinked limit shape at an end of the critical ratio interval.
/// Gravity-pressure lower end: downward wedge. Gravity-bridge/wind upper
/// end: upward wedge. Gravity-bridge/wind lower end: flat segment raised
/// by (L-x0)/2 on two vertical legs. Gravity-pressure upper end is not
/// constructible (self-contact precedes it).
LimitGeometry limiting_geometry(LoadPair pair, const BoundaryData& boundary, LimitEnd end);

}  // namespace catena
