#include "catena/chain.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "catena/pair_list.hpp"

namespace catena {

namespace {

double pow_repulsion(double base, double exponent) {
    // exponent is almost always the default 5; the multiply chain keeps the
    // force loop off the libm pow path.
    if (exponent == 5.0) {
        const double b2 = base * base;
        return b2 * b2 * base;
    }
    return std::pow(base, exponent);
}

void check_pair_distance(double r) {
    if (!(r > 0.0)) throw std::invalid_argument("coincident beads: repulsion is singular");
}

// Spring + repulsion energy with an externally supplied pair list (pairs
// must cover at least all pairs within the cutoff).
double energy_impl(const ChainState& st, const SimConfig& cfg,
                   std::span<const std::pair<int, int>> pairs) {
    double e = 0.0;
    for (int i = 0; i + 1 < st.size(); ++i) {
        const double r = (st.positions[i + 1] - st.positions[i]).norm();
        check_pair_distance(r);
        e += cfg.stiffness * (r - 1.0) * (r - 1.0);
    }
    for (const auto& [i, j] : pairs) {
        const double r = (st.positions[j] - st.positions[i]).norm();
        check_pair_distance(r);
        if (r <= cfg.repulsion_cutoff) e += pow_repulsion(cfg.repulsion_range / r, cfg.repulsion_exponent);
    }
    return e;
}

void internal_forces_impl(const ChainState& st, const SimConfig& cfg,
                          std::span<const std::pair<int, int>> pairs,
                          std::vector<Vec2>& out) {
    out.assign(st.positions.size(), Vec2{});
    for (int i = 0; i + 1 < st.size(); ++i) {
        const Vec2 d = st.positions[i + 1] - st.positions[i];
        const double r = d.norm();
        check_pair_distance(r);
        const Vec2 f = (2.0 * cfg.stiffness * (r - 1.0) / r) * d;  // pulls when stretched
        out[i] += f;
        out[i + 1] -= f;
    }
    const double scale = cfg.repulsion_exponent *
                         pow_repulsion(cfg.repulsion_range, cfg.repulsion_exponent);
    for (const auto& [i, j] : pairs) {
        const Vec2 d = st.positions[i] - st.positions[j];
        const double r = d.norm();
        check_pair_distance(r);
        if (r > cfg.repulsion_cutoff) continue;
        // -d/dr (range/r)^e = e range^e / r^(e+1), directed apart.
        const double mag = scale / (pow_repulsion(r, cfg.repulsion_exponent) * r * r);
        out[i] += mag * d;
        out[j] -= mag * d;
    }
}

void external_forces_impl(const ChainState& st, const LoadSpec& spec, std::vector<Vec2>& out) {
    out.assign(st.positions.size(), Vec2{});
    for (int i = 0; i + 1 < st.size(); ++i) {
        const Vec2 d = st.positions[i + 1] - st.positions[i];
        const double len = d.norm();
        if (len == 0.0) continue;
        const Vec2 n = d.left_normal() / len;
        Vec2 f{0.0, 0.0};
        f.y -= spec.g * len * 0.5;
        f.y += spec.p * std::fabs(d.x) * 0.5;
        if (spec.h != 0.0) f += (spec.h * len * 0.5) * n;
        if (spec.w != 0.0) {
            const double cos_a = d.x / len;
            f += (spec.w * cos_a * cos_a * len * 0.5) * n;
        }
        out[i] += f;
        out[i + 1] += f;
    }
}

// Velocity-Verlet step with damping; begin_forces are the load+internal
// forces at the current positions, end_forces returns them at the new ones.
template <typename ForceEval>
void verlet_core(ChainState& st, const SimConfig& cfg, const std::vector<Vec2>& begin_forces,
                 ForceEval&& eval_forces, std::vector<Vec2>& end_forces) {
    const double dt = st.dt;
    const double half = 0.5 * dt / cfg.mass;
    const int n = st.size();
    for (int i = 0; i < n; ++i) {
        if (st.fixed[i]) {
            st.velocities[i] = Vec2{};
            continue;
        }
        st.velocities[i] += half * (begin_forces[i] - cfg.damping * st.velocities[i]);
        st.positions[i] += dt * st.velocities[i];
    }
    eval_forces(st, end_forces);
    const double denom = 1.0 + half * cfg.damping;
    for (int i = 0; i < n; ++i) {
        if (st.fixed[i]) continue;
        st.velocities[i] = (st.velocities[i] + half * end_forces[i]) / denom;
    }
    st.time += dt;
}

double max_speed(const ChainState& st) {
    double v2 = 0.0;
    for (const Vec2& v : st.velocities) v2 = std::max(v2, v.norm2());
    return std::sqrt(v2);
}

double max_velocity_component(const ChainState& st) {
    double m = 0.0;
    for (const Vec2& v : st.velocities) {
        m = std::max(m, std::max(std::fabs(v.x), std::fabs(v.y)));
    }
    return m;
}

// Persistent-buffer stepper used by the relaxation and sweep drivers.
class ChainSimulator {
  public:
    ChainSimulator(const SimConfig& cfg, const LoadSpec& spec) : cfg_(cfg), spec_(spec) {
        cfg_.validate();
    }

    void set_load(const LoadSpec& spec) { spec_ = spec; }

    RelaxResult relax(ChainState& st) {
        const double t_enter = st.time;
        refresh_pairs(st);
        compute_forces(st, forces_);
        RelaxResult result;
        while (st.time - t_enter < cfg_.t_max) {
            verlet_core(st, cfg_, forces_,
                        [this](const ChainState& s, std::vector<Vec2>& out) {
                            refresh_pairs(s);
                            compute_forces(s, out);
                        },
                        forces_);
            ++result.steps;
            if (max_velocity_component(st) < cfg_.v_eq) {
                result.status = RelaxStatus::Converged;
                return result;
            }
            if (result.steps % cfg_.adapt_every == 0) st.dt = adapt_timestep(st, cfg_);
        }
        result.status = RelaxStatus::TimedOut;
        return result;
    }

  private:
    void refresh_pairs(const ChainState& st) {
        if (!pairs_.valid_for(st.positions)) {
            pairs_.rebuild(st.positions, cfg_.repulsion_cutoff, 0.3);
        }
    }

    void compute_forces(const ChainState& st, std::vector<Vec2>& out) {
        internal_forces_impl(st, cfg_, pairs_.pairs(), out);
        external_forces_impl(st, spec_, scratch_);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += scratch_[i];
    }

    SimConfig cfg_;
    LoadSpec spec_;
    PairList pairs_;
    std::vector<Vec2> forces_;
    std::vector<Vec2> scratch_;
};

}  // namespace

void SimConfig::validate() const {
    auto positive = [](double v, const char* what) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument(std::string("SimConfig: ") + what + " must be positive");
        }
    };
    positive(stiffness, "stiffness");
    positive(mass, "mass");
    positive(damping, "damping");
    positive(v_eq, "v_eq");
    positive(t_max, "t_max");
    positive(d_max, "d_max");
    positive(repulsion_range, "repulsion_range");
    positive(repulsion_exponent, "repulsion_exponent");
    positive(repulsion_cutoff, "repulsion_cutoff");
    positive(dt_min, "dt_min");
    positive(dt_max, "dt_max");
    positive(contact_threshold, "contact_threshold");
    if (d_max >= 1.0) throw std::invalid_argument("SimConfig: d_max must stay below the rest length");
    if (dt_min > dt_max) throw std::invalid_argument("SimConfig: dt_min exceeds dt_max");
    if (adapt_every < 1) throw std::invalid_argument("SimConfig: adapt_every must be >= 1");
}

ChainState make_chain(std::vector<Vec2> positions, double dt0) {
    if (positions.size() < 3) throw std::invalid_argument("chain needs at least 3 beads");
    ChainState st;
    st.positions = std::move(positions);
    st.velocities.assign(st.positions.size(), Vec2{});
    st.fixed.assign(st.positions.size(), 0);
    st.fixed.front() = 1;
    st.fixed.back() = 1;
    st.dt = dt0;
    return st;
}

ChainState initial_chain(int n_beads, double span, double sag_direction, double dt0) {
    if (n_beads < 3) throw std::invalid_argument("chain needs at least 3 beads");
    const double length = n_beads - 1.0;
    if (span <= 0.0 || span >= length) {
        throw std::invalid_argument("span must lie in (0, n_beads - 1)");
    }
    const double leg = 0.5 * length;
    const double half = 0.5 * span;
    const double depth = std::sqrt(leg * leg - half * half) * sag_direction;

    std::vector<Vec2> pts;
    pts.reserve(n_beads);
    for (int i = 0; i < n_beads; ++i) {
        const double s = static_cast<double>(i);
        if (s <= leg) {
            const double f = s / leg;
            pts.push_back({f * half, f * depth});
        } else {
            const double f = (s - leg) / leg;
            pts.push_back({half + f * half, depth * (1.0 - f)});
        }
    }
    pts.front() = {0.0, 0.0};
    pts.back() = {span, 0.0};
    return make_chain(std::move(pts), dt0);
}

double total_energy(const ChainState& state, const SimConfig& config) {
    config.validate();
    const auto pairs = pairs_within(state.positions, config.repulsion_cutoff);
    return energy_impl(state, config, pairs);
}

std::vector<Vec2> internal_forces(const ChainState& state, const SimConfig& config) {
    config.validate();
    const auto pairs = pairs_within(state.positions, config.repulsion_cutoff);
    std::vector<Vec2> out;
    internal_forces_impl(state, config, pairs, out);
    return out;
}

std::vector<Vec2> external_forces(const ChainState& state, const LoadSpec& spec) {
    std::vector<Vec2> out;
    external_forces_impl(state, spec, out);
    return out;
}

void step_verlet(ChainState& state, const ForceFn& forces_fn, const SimConfig& config) {
    config.validate();
    std::vector<Vec2> begin = forces_fn(state);
    std::vector<Vec2> end;
    verlet_core(state, config, begin,
                [&forces_fn](const ChainState& s, std::vector<Vec2>& out) { out = forces_fn(s); },
                end);
}

double adapt_timestep(const ChainState& state, const SimConfig& config) {
    const double speed = max_speed(state);
    if (speed == 0.0) return config.dt_max;
    const double predicted = speed * state.dt;
    if (predicted >= 0.5 * config.d_max && predicted <= config.d_max) return state.dt;
    return std::clamp(config.d_max / speed, config.dt_min, config.dt_max);
}

RelaxResult relax_to_equilibrium(ChainState& state, const LoadSpec& spec,
                                 const SimConfig& config) {
    ChainSimulator sim(config, spec);
    return sim.relax(state);
}

SweepSchedule make_sweep_schedule(LoadPair pair, double ratio_max, double ratio_step,
                                  double gravity) {
    if (!(ratio_max > 0.0) || !(ratio_step > 0.0) || ratio_step > ratio_max) {
        throw std::invalid_argument("need 0 < ratio_step <= ratio_max");
    }
    SweepSchedule sched;
    sched.pair = pair;
    sched.gravity = gravity;
    const int n_up = static_cast<int>(std::lround(ratio_max / ratio_step));
    for (int i = 0; i <= n_up; ++i) sched.ratios.push_back(i * ratio_step);
    for (int i = n_up - 1; i >= 0; --i) sched.ratios.push_back(i * ratio_step);
    return sched;
}

SweepRecord run_sweep(const SweepSchedule& schedule, const BoundaryData& boundary,
                      const SimConfig& config, std::uint64_t seed) {
    if (schedule.ratios.empty()) throw std::invalid_argument("empty sweep schedule");
    if (schedule.ratios.front() != 0.0 || schedule.ratios.back() != 0.0) {
        throw std::invalid_argument("sweep schedule must start and end at ratio 0");
    }
    if (!(schedule.gravity > 0.0)) throw std::invalid_argument("sweep needs gravity > 0");
    const int n_beads = static_cast<int>(std::lround(boundary.length)) + 1;
    if (std::fabs(boundary.length - (n_beads - 1.0)) > 1e-9) {
        throw std::invalid_argument("sweep boundary length must be a whole number of rest lengths");
    }
    if (boundary.y0 != 0.0) throw std::invalid_argument("sweep supports must be level");

    ChainState state = initial_chain(n_beads, boundary.x0, -1.0, config.dt_max);
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> jitter(-1e-8, 1e-8);
        for (int i = 1; i + 1 < state.size(); ++i) state.positions[i].y += jitter(rng);
    }

    SweepRecord record;
    record.snapshots.reserve(schedule.ratios.size());
    ChainSimulator sim(config, LoadSpec{});
    for (double ratio : schedule.ratios) {
        sim.set_load(pair_load(schedule.pair, schedule.gravity, ratio));
        const RelaxResult r = sim.relax(state);
        SweepSnapshot snap;
        snap.ratio = ratio;
        snap.state = state;
        snap.converged = r.status == RelaxStatus::Converged;
        snap.steps = r.steps;
        snap.contacts = detect_self_contact(state, config.contact_threshold);
        record.snapshots.push_back(std::move(snap));
    }
    return record;
}

std::vector<std::pair<int, int>> detect_self_contact(const ChainState& state, double threshold) {
    if (!(threshold > 0.0)) throw std::invalid_argument("contact threshold must be positive");
    std::vector<std::pair<int, int>> out;
    const double t2 = threshold * threshold;
    for (int i = 0; i + 2 < state.size(); ++i) {
        for (int j = i + 2; j < state.size(); ++j) {
            if ((state.positions[j] - state.positions[i]).norm2() < t2) out.push_back({i, j});
        }
    }
    return out;
}

}  // namespace catena
