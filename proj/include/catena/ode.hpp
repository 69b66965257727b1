#pragma once

#include <vector>

#include "catena/critical.hpp"
#include "catena/loads.hpp"

namespace catena {

/// Intrinsic state of the string at arclength s: slope angle, tension and
/// position. Tension stays positive along any accepted trajectory point.
struct StringState {
    double s = 0.0;
    double alpha = 0.0;
    double tension = 0.0;
    double x = 0.0;
    double y = 0.0;
};

enum class Termination {
    ReachedEnd,       ///< integrated through s_max
    TensionVanished,  ///< tension dropped to the floor (kink territory)
    StepFailure       ///< step shrank below the minimum without resolving
};

struct Trajectory {
    std::vector<StringState> states;  ///< samples with strictly increasing s
    Termination termination = Termination::ReachedEnd;

    const StringState& front() const { return states.front(); }
    const StringState& back() const { return states.back(); }
};

/// First integral of the intrinsic system, when the load admits one:
/// T cos(alpha) for pure gravity or pure bridge load, T itself for pure
/// wind or pure pressure. Genuine combinations have none.
enum class ConservedQuantity { None, HorizontalTension, TensionMagnitude };

ConservedQuantity invariant_monitor(const LoadSpec& spec);
double monitor_value(ConservedQuantity q, double alpha, double tension);

struct IntegrateOptions {
    double tol = 1e-10;          ///< relative drift / Richardson target
    double sample_ds = 0.0;      ///< stored sample spacing; 0 = span/1000
    int initial_steps = 0;       ///< starting step count; 0 = automatic
    int max_refinements = 8;     ///< step-halving rounds before giving up
    double tension_floor = 1e-9; ///< tension treated as vanished
};

/// Fixed-step RK4 integration of the autonomous system
///   d(alpha)/ds = f_n(alpha)/T,  dT/ds = f_t(alpha),
///   dx/ds = cos(alpha),          dy/ds = sin(alpha),
/// refining the step until the conserved-quantity drift (pure loads) or
/// a Richardson half-step comparison (combined loads) is below tol.
/// Stops early when tension falls to the floor; steps through the steep
/// zone near T -> 0 are bisected locally to land just above it.
Trajectory integrate_ivp(const LoadSpec& spec, const StringState& init, double s_max,
                         const IntegrateOptions& options);
Trajectory integrate_ivp(const LoadSpec& spec, const StringState& init, double s_max,
                         double tol = 1e-10);

struct StripeLocation {
    int index = 0;       ///< stripe number; 0 is below the first root
    bool on_root = false; ///< alpha coincides with a root (within 1e-9)
};

/// Index of the invariant stripe containing alpha: k when
/// roots[k-1] < alpha < roots[k], with sentinel stripes beyond the
/// extreme roots. An empty critical set yields the single stripe 0.
StripeLocation stripe_index(double alpha, const CriticalSet& cs);

}  // namespace catena
