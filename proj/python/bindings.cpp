#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "catena/analytic.hpp"
#include "catena/bvp.hpp"
#include "catena/chain.hpp"
#include "catena/critical.hpp"
#include "catena/io.hpp"
#include "catena/loads.hpp"
#include "catena/ode.hpp"

namespace py = pybind11;
using namespace catena;

PYBIND11_MODULE(_catena, m) {
    m.doc() = "flexible string mechanics: critical slopes, shooting BVP, bead-chain dynamics";

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y)
        .def("__repr__", [](const Vec2& v) {
            return "Vec2(" + format_full(v.x) + ", " + format_full(v.y) + ")";
        });

    // loads
    py::class_<LoadSpec>(m, "LoadSpec")
        .def(py::init<double, double, double, double>(), py::arg("g") = 0.0, py::arg("p") = 0.0,
             py::arg("w") = 0.0, py::arg("h") = 0.0)
        .def_readonly("g", &LoadSpec::g)
        .def_readonly("p", &LoadSpec::p)
        .def_readonly("w", &LoadSpec::w)
        .def_readonly("h", &LoadSpec::h);
    py::class_<LoadSample>(m, "LoadSample")
        .def_readonly("f_n", &LoadSample::f_n)
        .def_readonly("f_t", &LoadSample::f_t)
        .def("curvature_radius", &LoadSample::curvature_radius, py::arg("tension"));
    m.def("evaluate", &evaluate, py::arg("spec"), py::arg("alpha"));
    m.def("fn_derivative", &fn_derivative, py::arg("spec"), py::arg("alpha"));

    // critical
    py::enum_<Multiplicity>(m, "Multiplicity")
        .value("Simple", Multiplicity::Simple)
        .value("Double", Multiplicity::Double);
    py::class_<CriticalSet>(m, "CriticalSet")
        .def_readonly("roots", &CriticalSet::roots)
        .def_readonly("multiplicity", &CriticalSet::multiplicity)
        .def("__len__", &CriticalSet::size);
    py::class_<RelevantRoots>(m, "RelevantRoots")
        .def_readonly("alpha_lo", &RelevantRoots::alpha_lo)
        .def_readonly("alpha_hi", &RelevantRoots::alpha_hi)
        .def_readonly("delta", &RelevantRoots::delta)
        .def_readonly("phi", &RelevantRoots::phi);
    py::class_<BoundaryData>(m, "BoundaryData")
        .def(py::init<double, double, double>(), py::arg("length"), py::arg("x0"),
             py::arg("y0") = 0.0)
        .def_readonly("length", &BoundaryData::length)
        .def_readonly("x0", &BoundaryData::x0)
        .def_readonly("y0", &BoundaryData::y0)
        .def("alpha0", &BoundaryData::alpha0);
    py::class_<NonexistenceCheck>(m, "NonexistenceCheck")
        .def_readonly("nonexistent", &NonexistenceCheck::nonexistent)
        .def_readonly("degenerate", &NonexistenceCheck::degenerate)
        .def_readonly("critical_length", &NonexistenceCheck::critical_length)
        .def("__bool__", [](const NonexistenceCheck& c) { return c.nonexistent; });
    py::enum_<LoadPair>(m, "LoadPair")
        .value("GravityBridge", LoadPair::GravityBridge)
        .value("GravityWind", LoadPair::GravityWind)
        .value("GravityPressure", LoadPair::GravityPressure);
    py::enum_<LimitEnd>(m, "LimitEnd")
        .value("Lower", LimitEnd::Lower)
        .value("Upper", LimitEnd::Upper);
    py::class_<LimitGeometry>(m, "LimitGeometry")
        .def_readonly("constructible", &LimitGeometry::constructible)
        .def_readonly("points", &LimitGeometry::points);
    py::class_<BifurcationPoint>(m, "BifurcationPoint")
        .def_readonly("ratio", &BifurcationPoint::ratio)
        .def_readonly("critical", &BifurcationPoint::critical);

    m.def("find_critical_roots", &find_critical_roots, py::arg("spec"));
    m.def("scan_critical_roots", &scan_critical_roots, py::arg("spec"));
    m.def("relevant_roots", &relevant_roots, py::arg("critical_set"), py::arg("alpha0"));
    m.def("smooth_nonexistence", &smooth_nonexistence, py::arg("boundary"), py::arg("relevant"));
    m.def("critical_ratio_interval", &critical_ratio_interval, py::arg("pair"),
          py::arg("boundary"));
    m.def(
        "bifurcation_sweep",
        [](LoadPair pair, const std::vector<double>& ratios) {
            return bifurcation_sweep(pair, ratios);
        },
        py::arg("pair"), py::arg("ratios"));
    m.def("pair_load", &pair_load, py::arg("pair"), py::arg("gravity"), py::arg("ratio"));
    m.def("limiting_geometry", &limiting_geometry, py::arg("pair"), py::arg("boundary"),
          py::arg("end"));

    // ode
    py::class_<StringState>(m, "StringState")
        .def(py::init([](double s, double alpha, double tension, double x, double y) {
                 return StringState{s, alpha, tension, x, y};
             }),
             py::arg("s") = 0.0, py::arg("alpha") = 0.0, py::arg("tension") = 0.0,
             py::arg("x") = 0.0, py::arg("y") = 0.0)
        .def_readwrite("s", &StringState::s)
        .def_readwrite("alpha", &StringState::alpha)
        .def_readwrite("tension", &StringState::tension)
        .def_readwrite("x", &StringState::x)
        .def_readwrite("y", &StringState::y);
    py::enum_<Termination>(m, "Termination")
        .value("ReachedEnd", Termination::ReachedEnd)
        .value("TensionVanished", Termination::TensionVanished)
        .value("StepFailure", Termination::StepFailure);
    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("states", &Trajectory::states)
        .def_readonly("termination", &Trajectory::termination);
    py::enum_<ConservedQuantity>(m, "ConservedQuantity")
        .value("NoQuantity", ConservedQuantity::None)
        .value("HorizontalTension", ConservedQuantity::HorizontalTension)
        .value("TensionMagnitude", ConservedQuantity::TensionMagnitude);
    py::class_<StripeLocation>(m, "StripeLocation")
        .def_readonly("index", &StripeLocation::index)
        .def_readonly("on_root", &StripeLocation::on_root);

    m.def(
        "integrate_ivp",
        [](const LoadSpec& spec, const StringState& init, double s_max, double tol) {
            return integrate_ivp(spec, init, s_max, tol);
        },
        py::arg("spec"), py::arg("init"), py::arg("s_max"), py::arg("tol") = 1e-10);
    m.def("invariant_monitor", &invariant_monitor, py::arg("spec"));
    m.def("monitor_value", &monitor_value, py::arg("quantity"), py::arg("alpha"),
          py::arg("tension"));
    m.def("stripe_index", &stripe_index, py::arg("alpha"), py::arg("critical_set"));

    // analytic
    py::enum_<ClosedFormKind>(m, "ClosedFormKind")
        .value("Catenary", ClosedFormKind::Catenary)
        .value("Parabola", ClosedFormKind::Parabola)
        .value("Circle", ClosedFormKind::Circle)
        .value("WindCatenary", ClosedFormKind::WindCatenary);
    py::class_<ClosedFormSolution>(m, "ClosedFormSolution")
        .def_readonly("kind", &ClosedFormSolution::kind)
        .def_readonly("shape_parameter", &ClosedFormSolution::shape_parameter)
        .def_readonly("states", &ClosedFormSolution::states);
    m.def("analytic_bvp", &analytic_bvp, py::arg("kind"), py::arg("intensity"),
          py::arg("boundary"), py::arg("samples") = 1001);

    // bvp
    py::enum_<BvpStatus>(m, "BvpStatus")
        .value("Smooth", BvpStatus::Smooth)
        .value("SelfIntersecting", BvpStatus::SelfIntersecting)
        .value("NotFound", BvpStatus::NotFound);
    py::class_<ShootGuess>(m, "ShootGuess")
        .def(py::init([](double alpha0, double tension0) {
                 return ShootGuess{alpha0, tension0};
             }),
             py::arg("alpha0"), py::arg("tension0"))
        .def_readwrite("alpha0", &ShootGuess::alpha0)
        .def_readwrite("tension0", &ShootGuess::tension0);
    py::class_<BvpSolution>(m, "BvpSolution")
        .def_readonly("status", &BvpSolution::status)
        .def_readonly("trajectory", &BvpSolution::trajectory)
        .def_readonly("unknowns", &BvpSolution::unknowns)
        .def_readonly("residual", &BvpSolution::residual);
    m.def(
        "shoot",
        [](const LoadSpec& spec, const BoundaryData& b, const ShootGuess& g) {
            return shoot(spec, b, g);
        },
        py::arg("spec"), py::arg("boundary"), py::arg("guess"));
    m.def(
        "find_smooth_solution",
        [](const LoadSpec& spec, const BoundaryData& b, int multistart) {
            MultistartOptions opts;
            opts.alphas_per_stripe = multistart;
            return find_smooth_solution(spec, b, opts);
        },
        py::arg("spec"), py::arg("boundary"), py::arg("multistart") = 8);
    m.def(
        "self_intersects",
        [](const std::vector<Vec2>& polyline) { return self_intersects(polyline); },
        py::arg("polyline"));
    m.def("chord_tangent_exists", &chord_tangent_exists, py::arg("trajectory"),
          py::arg("alpha0"), py::arg("tol"));

    // chain
    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("stiffness", &SimConfig::stiffness)
        .def_readwrite("mass", &SimConfig::mass)
        .def_readwrite("damping", &SimConfig::damping)
        .def_readwrite("v_eq", &SimConfig::v_eq)
        .def_readwrite("t_max", &SimConfig::t_max)
        .def_readwrite("d_max", &SimConfig::d_max)
        .def_readwrite("repulsion_range", &SimConfig::repulsion_range)
        .def_readwrite("repulsion_exponent", &SimConfig::repulsion_exponent)
        .def_readwrite("repulsion_cutoff", &SimConfig::repulsion_cutoff)
        .def_readwrite("dt_min", &SimConfig::dt_min)
        .def_readwrite("dt_max", &SimConfig::dt_max)
        .def_readwrite("adapt_every", &SimConfig::adapt_every)
        .def_readwrite("contact_threshold", &SimConfig::contact_threshold);
    py::class_<ChainState>(m, "ChainState")
        .def_readwrite("positions", &ChainState::positions)
        .def_readwrite("velocities", &ChainState::velocities)
        .def_readonly("fixed", &ChainState::fixed)
        .def_readonly("time", &ChainState::time)
        .def_readwrite("dt", &ChainState::dt)
        .def("__len__", &ChainState::size);
    py::enum_<RelaxStatus>(m, "RelaxStatus")
        .value("Converged", RelaxStatus::Converged)
        .value("TimedOut", RelaxStatus::TimedOut);
    py::class_<RelaxResult>(m, "RelaxResult")
        .def_readonly("status", &RelaxResult::status)
        .def_readonly("steps", &RelaxResult::steps);
    py::class_<SweepSchedule>(m, "SweepSchedule")
        .def_readonly("pair", &SweepSchedule::pair)
        .def_readonly("gravity", &SweepSchedule::gravity)
        .def_readonly("ratios", &SweepSchedule::ratios);
    py::class_<SweepSnapshot>(m, "SweepSnapshot")
        .def_readonly("ratio", &SweepSnapshot::ratio)
        .def_readonly("state", &SweepSnapshot::state)
        .def_readonly("converged", &SweepSnapshot::converged)
        .def_readonly("steps", &SweepSnapshot::steps)
        .def_readonly("contacts", &SweepSnapshot::contacts);
    py::class_<SweepRecord>(m, "SweepRecord")
        .def_readonly("snapshots", &SweepRecord::snapshots);

    m.def("make_chain", &make_chain, py::arg("positions"), py::arg("dt0") = 2e-3);
    m.def("initial_chain", &initial_chain, py::arg("n_beads"), py::arg("span"),
          py::arg("sag_direction") = -1.0, py::arg("dt0") = 2e-3);
    m.def("total_energy", &total_energy, py::arg("state"), py::arg("config"));
    m.def("internal_forces", &internal_forces, py::arg("state"), py::arg("config"));
    m.def("external_forces", &external_forces, py::arg("state"), py::arg("spec"));
    m.def("adapt_timestep", &adapt_timestep, py::arg("state"), py::arg("config"));
    m.def("relax_to_equilibrium", &relax_to_equilibrium, py::arg("state"), py::arg("spec"),
          py::arg("config"));
    m.def("make_sweep_schedule", &make_sweep_schedule, py::arg("pair"), py::arg("ratio_max"),
          py::arg("ratio_step"), py::arg("gravity") = 1.0);
    m.def("run_sweep", &run_sweep, py::arg("schedule"), py::arg("boundary"), py::arg("config"),
          py::arg("seed") = 0);
    m.def("detect_self_contact", &detect_self_contact, py::arg("state"), py::arg("threshold"));
}
