#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "catena/critical.hpp"
#include "catena/loads.hpp"
#include "catena/vec2.hpp"

namespace catena {

/// Bead-chain simulation parameters. Springs of unit rest length connect
/// neighbouring beads; a steep short-range repulsion acts between all
/// bead pairs within the cutoff to keep the string from crossing itself.
struct SimConfig {
    double stiffness = 1e4;        ///< spring constant k
    double mass = 1.0;             ///< bead mass
    double damping = 2.0;          ///< velocity damping coefficient gamma
    double v_eq = 1e-6;            ///< equilibrium velocity-component threshold
    double t_max = 5e3;            ///< simulated-time cap per relaxation
    double d_max = 0.01;           ///< displacement cap per step
    double repulsion_range = 0.8;  ///< range constant of (range/r)^exponent
    double repulsion_exponent = 5.0;
    double repulsion_cutoff = 2.0; ///< pair interaction cutoff, in rest lengths
    double dt_min = 1e-8;
    double dt_max = 2e-3;
    int adapt_every = 100;         ///< steps between timestep adjustments
    double contact_threshold = 0.85;

    void validate() const;  ///< throws std::invalid_argument on bad values
};

struct ChainState {
    std::vector<Vec2> positions;
    std::vector<Vec2> velocities;
    std::vector<std::uint8_t> fixed;  ///< first and last bead are pinned
    double time = 0.0;
    double dt = 2e-3;

    int size() const { return static_cast<int>(positions.size()); }
};

/// Chain with the given bead positions, zero velocities and pinned ends.
ChainState make_chain(std::vector<Vec2> positions, double dt0);

/// V-shaped seed chain of n beads at unit spacing between supports (0,0)
/// and (span,0); sag_direction -1 points the vertex down, +1 up.
ChainState initial_chain(int n_beads, double span, double sag_direction, double dt0);

/// Spring energy over consecutive pairs plus repulsion over all pairs
/// within the cutoff:  sum k (r-1)^2 + sum (range/r)^exponent.
double total_energy(const ChainState& state, const SimConfig& config);

/// Exact negative gradient of total_energy.
std::vector<Vec2> internal_forces(const ChainState& state, const SimConfig& config);

/// Discrete per-bead load forces. Each segment of length l, horizontal
/// extent dx and left normal n contributes to both of its endpoint beads:
/// gravity (0, -g l/2); bridge (0, +p |dx|/2); pressure +h (l/2) n;
/// wind +w cos^2(alpha) (l/2) n with cos(alpha) = dx/l.
std::vector<Vec2> external_forces(const ChainState& state, const LoadSpec& spec);

using ForceFn = std::function<std::vector<Vec2>(const ChainState&)>;

/// One velocity-Verlet step with force = forces_fn(state) - gamma * v.
/// The trailing half-kick solves the damping implicitly; fixed beads do
/// not move.
void step_verlet(ChainState& state, const ForceFn& forces_fn, const SimConfig& config);

/// Timestep keeping the predicted per-step displacement at or below
/// d_max: unchanged while max_speed * dt stays within [d_max/2, d_max],
/// otherwise d_max / max_speed clamped to [dt_min, dt_max].
double adapt_timestep(const ChainState& state, const SimConfig& config);

enum class RelaxStatus { Converged, TimedOut };

struct RelaxResult {
    RelaxStatus status = RelaxStatus::TimedOut;
    long steps = 0;
};

/// Step until every velocity component is below v_eq (Converged) or t_max
/// simulated time has passed since entry (TimedOut), adjusting the
/// timestep every adapt_every steps.
RelaxResult relax_to_equilibrium(ChainState& state, const LoadSpec& spec,
                                 const SimConfig& config);

/// Up-then-down ramp of the opposing load ratio at fixed gravity.
struct SweepSchedule {
    LoadPair pair = LoadPair::GravityPressure;
    double gravity = 1.0;
    std::vector<double> ratios;  ///< starts and ends at 0
};

SweepSchedule make_sweep_schedule(LoadPair pair, double ratio_max, double ratio_step,
                                  double gravity = 1.0);

struct SweepSnapshot {
    double ratio = 0.0;
    ChainState state;
    bool converged = false;
    long steps = 0;
    std::vector<std::pair<int, int>> contacts;
};

struct SweepRecord {
    std::vector<SweepSnapshot> snapshots;  ///< one per schedule entry
};

/// Run the load schedule: each entry relaxes from the previous state
/// (the first, at ratio 0, is the gravity-only relaxation). Bead count is
/// boundary.length + 1 at unit rest length. A nonzero seed applies a tiny
/// deterministic transverse jitter to the seed chain.
SweepRecord run_sweep(const SweepSchedule& schedule, const BoundaryData& boundary,
                      const SimConfig& config, std::uint64_t seed = 0);

/// Non-adjacent bead pairs (|i-j| >= 2) closer than the threshold.
std::vector<std::pair<int, int>> detect_self_contact(const ChainState& state, double threshold);

}  // namespace catena
