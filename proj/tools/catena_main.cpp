// catena: equilibria of flexible strings under slope-dependent loads.
//
// Subcommands: roots, bifurcation, ivp, bvp, oracle, simulate, sweep,
// limits. Each reads a flat `key = value` config file and writes CSV
// (and optionally SVG) into the output directory, printing a one-line
// machine-readable summary on stdout.
//
// Exit codes: 0 analysis completed (including scientifically negative
// outcomes such as `status=NotFound`), 1 numerical failure, 2 bad input.

#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catena/analytic.hpp"
#include "catena/bvp.hpp"
#include "catena/chain.hpp"
#include "catena/config.hpp"
#include "catena/critical.hpp"
#include "catena/io.hpp"
#include "catena/loads.hpp"
#include "catena/ode.hpp"

namespace {

using namespace catena;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    bool svg = false;
    bool verbose = false;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

LoadSpec load_from_config(const Config& cfg) {
    return LoadSpec(cfg.get_double("g", 0.0), cfg.get_double("p", 0.0),
                    cfg.get_double("w", 0.0), cfg.get_double("h", 0.0));
}

BoundaryData boundary_from_config(const Config& cfg) {
    return BoundaryData(cfg.require_double("L"), cfg.require_double("x0"),
                        cfg.get_double("y0", 0.0));
}

LoadPair pair_from_config(const Config& cfg) {
    const std::string s = cfg.get_string("pair", "gh");
    if (s == "gp") return LoadPair::GravityBridge;
    if (s == "gw") return LoadPair::GravityWind;
    if (s == "gh") return LoadPair::GravityPressure;
    throw std::runtime_error("config key `pair` must be one of gp, gw, gh");
}

SimConfig sim_from_config(const Config& cfg) {
    SimConfig sim;
    sim.stiffness = cfg.get_double("k", sim.stiffness);
    sim.mass = cfg.get_double("mass", sim.mass);
    sim.damping = cfg.get_double("gamma", sim.damping);
    sim.v_eq = cfg.get_double("v_eq", sim.v_eq);
    sim.t_max = cfg.get_double("t_max", sim.t_max);
    sim.d_max = cfg.get_double("d_max", sim.d_max);
    sim.dt_min = cfg.get_double("dt_min", sim.dt_min);
    sim.dt_max = cfg.get_double("dt_max", sim.dt_max);
    sim.contact_threshold = cfg.get_double("contact_threshold", sim.contact_threshold);
    sim.validate();
    return sim;
}

std::string out_path(const CommonArgs& args, const std::string& name) {
    return args.out_dir + "/" + name;
}

int run_roots(const CommonArgs& args, const Config& cfg) {
    const LoadSpec spec = load_from_config(cfg);
    const CriticalSet cs = find_critical_roots(spec);
    write_file(out_path(args, "roots.csv"), roots_csv(cs));
    std::cout << "verb=roots status=ok roots=" << cs.size() << " out=" << args.out_dir << "\n";
    return 0;
}

int run_bifurcation(const CommonArgs& args, const Config& cfg) {
    const LoadPair pair = pair_from_config(cfg);
    const double lo = cfg.get_double("ratio_min", 0.0);
    const double hi = cfg.require_double("ratio_max");
    const double step = cfg.require_double("ratio_step");
    if (!(step > 0.0) || hi < lo) throw std::runtime_error("bad ratio grid");
    std::vector<double> ratios;
    for (double r = lo; r <= hi + 1e-12; r += step) ratios.push_back(r);
    const auto table = bifurcation_sweep(pair, ratios);
    write_file(out_path(args, "bifurcation.csv"), bifurcation_csv(table));
    std::cout << "verb=bifurcation status=ok points=" << table.size() << " out=" << args.out_dir
              << "\n";
    return 0;
}

int run_ivp(const CommonArgs& args, const Config& cfg) {
    const LoadSpec spec = load_from_config(cfg);
    StringState init;
    init.alpha = cfg.get_double("alpha_init", 0.0);
    init.tension = cfg.require_double("T_init");
    init.x = cfg.get_double("x_init", 0.0);
    init.y = cfg.get_double("y_init", 0.0);
    const double s_max = cfg.require_double("s_max");
    const double tol = cfg.get_double("tol", 1e-10);

    const Trajectory traj = integrate_ivp(spec, init, s_max, tol);
    write_file(out_path(args, "trajectory.csv"), trajectory_csv(traj.states));
    if (args.svg) {
        write_file(out_path(args, "trajectory.svg"),
                   polyline_svg(trajectory_polyline(traj)));
    }
    const char* status = traj.termination == Termination::ReachedEnd      ? "ok"
                         : traj.termination == Termination::TensionVanished ? "tension_vanished"
                                                                            : "step_failure";
    std::cout << "verb=ivp status=" << status << " samples=" << traj.states.size()
              << " s_end=" << format_full(traj.back().s) << " out=" << args.out_dir << "\n";
    return traj.termination == Termination::StepFailure ? 1 : 0;
}

int run_bvp(const CommonArgs& args, const Config& cfg) {
    const LoadSpec spec = load_from_config(cfg);
    const BoundaryData boundary = boundary_from_config(cfg);
    MultistartOptions opts;
    opts.alphas_per_stripe = static_cast<int>(cfg.get_long("multistart", opts.alphas_per_stripe));

    const BvpSolution sol = find_smooth_solution(spec, boundary, opts);
    write_file(out_path(args, "status.json"), bvp_status_json(sol) + "\n");
    if (!sol.trajectory.states.empty()) {
        write_file(out_path(args, "solution.csv"), trajectory_csv(sol.trajectory.states));
        if (args.svg) {
            write_file(out_path(args, "solution.svg"),
                       polyline_svg(trajectory_polyline(sol.trajectory)));
        }
    }
    std::cout << "verb=bvp status=" << to_string(sol.status)
              << " residual=" << format_full(sol.residual) << " out=" << args.out_dir << "\n";
    return 0;
}

int run_oracle(const CommonArgs& args, const Config& cfg) {
    const std::string kind_s = cfg.get_string("kind", "catenary");
    ClosedFormKind kind;
    if (kind_s == "catenary") kind = ClosedFormKind::Catenary;
    else if (kind_s == "parabola") kind = ClosedFormKind::Parabola;
    else if (kind_s == "circle") kind = ClosedFormKind::Circle;
    else if (kind_s == "wind") kind = ClosedFormKind::WindCatenary;
    else throw std::runtime_error("config key `kind` must be catenary|parabola|circle|wind");

    const double intensity = cfg.get_double("intensity", 1.0);
    const BoundaryData boundary = boundary_from_config(cfg);
    const ClosedFormSolution sol = analytic_bvp(kind, intensity, boundary);
    write_file(out_path(args, "oracle.csv"), trajectory_csv(sol.states));
    if (args.svg) {
        std::vector<Vec2> pts;
        for (const StringState& st : sol.states) pts.push_back({st.x, st.y});
        write_file(out_path(args, "oracle.svg"), polyline_svg(pts));
    }
    std::cout << "verb=oracle status=ok kind=" << kind_s
              << " parameter=" << format_full(sol.shape_parameter) << " out=" << args.out_dir
              << "\n";
    return 0;
}

int run_simulate(const CommonArgs& args, const Config& cfg) {
    const LoadSpec spec = load_from_config(cfg);
    const SimConfig sim = sim_from_config(cfg);
    const int n_beads = static_cast<int>(cfg.get_long("n_beads", 100));
    const double span = cfg.require_double("span");

    // Seed the chain sagging with the dominant vertical load.
    const double direction = evaluate(spec, 0.0).f_n >= 0.0 ? -1.0 : 1.0;
    ChainState state = initial_chain(n_beads, span, direction, sim.dt_max);
    const std::uint64_t seed = args.seed_given ? args.seed : cfg.get_u64("seed", 0);
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> jitter(-1e-8, 1e-8);
        for (int i = 1; i + 1 < state.size(); ++i) state.positions[i].y += jitter(rng);
    }

    const RelaxResult r = relax_to_equilibrium(state, spec, sim);
    const bool converged = r.status == RelaxStatus::Converged;
    write_file(out_path(args, "snapshot.csv"), snapshot_csv(0.0, state, converged));
    if (args.svg) {
        std::vector<Vec2> pts(state.positions.begin(), state.positions.end());
        write_file(out_path(args, "snapshot.svg"), polyline_svg(pts));
    }
    const auto contacts = detect_self_contact(state, sim.contact_threshold);
    std::cout << "verb=simulate status=" << (converged ? "Converged" : "TimedOut")
              << " steps=" << r.steps << " contacts=" << contacts.size()
              << " out=" << args.out_dir << "\n";
    return 0;
}

int run_sweep_cmd(const CommonArgs& args, const Config& cfg) {
    const SimConfig sim = sim_from_config(cfg);
    const LoadPair pair = pair_from_config(cfg);
    const double gravity = cfg.get_double("g", 1.0);
    const double ratio_max = cfg.require_double("ratio_max");
    const double ratio_step = cfg.require_double("ratio_step");
    const int n_beads = static_cast<int>(cfg.get_long("n_beads", 100));
    const double span = cfg.require_double("span");
    const std::uint64_t seed = args.seed_given ? args.seed : cfg.get_u64("seed", 0);

    const SweepSchedule schedule = make_sweep_schedule(pair, ratio_max, ratio_step, gravity);
    const BoundaryData boundary(n_beads - 1.0, span);
    const SweepRecord record = run_sweep(schedule, boundary, sim, seed);

    write_file(out_path(args, "sweep.csv"), sweep_csv(record));
    if (args.svg) write_file(out_path(args, "sweep.svg"), filmstrip_svg(record));

    int converged = 0;
    int with_contact = 0;
    for (const SweepSnapshot& snap : record.snapshots) {
        converged += snap.converged ? 1 : 0;
        with_contact += snap.contacts.empty() ? 0 : 1;
    }
    std::cout << "verb=sweep status=ok snapshots=" << record.snapshots.size()
              << " converged=" << converged << " with_contact=" << with_contact
              << " out=" << args.out_dir << "\n";
    return 0;
}

int run_limits(const CommonArgs& args, const Config& cfg) {
    const LoadPair pair = pair_from_config(cfg);
    const BoundaryData boundary = boundary_from_config(cfg);
    const std::string end_s = cfg.get_string("which_end", "lower");
    LimitEnd end;
    if (end_s == "lower") end = LimitEnd::Lower;
    else if (end_s == "upper") end = LimitEnd::Upper;
    else throw std::runtime_error("config key `which_end` must be lower|upper");

    const LimitGeometry geom = limiting_geometry(pair, boundary, end);
    if (!geom.constructible) {
        std::cout << "verb=limits status=not_constructible out=" << args.out_dir << "\n";
        return 0;
    }
    write_file(out_path(args, "limit.csv"), polyline_csv(geom.points));
    if (args.svg) write_file(out_path(args, "limit.svg"), polyline_svg(geom.points));
    std::cout << "verb=limits status=ok vertices=" << geom.points.size()
              << " out=" << args.out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flexible string mechanics toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string verb;
    for (const char* name : {"roots", "bifurcation", "ivp", "bvp", "oracle", "simulate",
                             "sweep", "limits"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", args.config_path, "config file (key = value lines)")
            ->required();
        sub->add_option("--out", args.out_dir, "output directory");
        sub->add_flag("--svg", args.svg, "also write SVG plots");
        sub->add_option("--seed", args.seed, "override the config seed")
            ->each([&args](const std::string&) { args.seed_given = true; });
        sub->add_flag("--verbose", args.verbose, "chatty progress output");
        sub->callback([&verb, name]() { verb = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const Config cfg = Config::load(args.config_path);
        if (args.verbose) {
            for (const auto& [k, v] : cfg.entries()) std::cerr << "config: " << k << " = " << v << "\n";
        }
        if (verb == "roots") return run_roots(args, cfg);
        if (verb == "bifurcation") return run_bifurcation(args, cfg);
        if (verb == "ivp") return run_ivp(args, cfg);
        if (verb == "bvp") return run_bvp(args, cfg);
        if (verb == "oracle") return run_oracle(args, cfg);
        if (verb == "simulate") return run_simulate(args, cfg);
        if (verb == "sweep") return run_sweep_cmd(args, cfg);
        if (verb == "limits") return run_limits(args, cfg);
        std::cerr << "error: unknown subcommand\n";
        return 2;
    } catch (const catena::ConfigError& e) {
        std::cerr << "error: " << args.config_path << ":" << e.line << ":" << e.column << ": "
                  << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
