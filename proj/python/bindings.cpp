#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "wormsim/calibration.hpp"
#include "wormsim/cli.hpp"
#include "wormsim/controller.hpp"
#include "wormsim/experiments.hpp"
#include "wormsim/gait.hpp"
#include "wormsim/scenario.hpp"
#include "wormsim/sensing.hpp"
#include "wormsim/simulator.hpp"
#include "wormsim/telemetry.hpp"

namespace py = pybind11;
using namespace wormsim;

namespace {

py::bytes frame_bytes(const Frame& f) { return {reinterpret_cast<const char*>(f.data()), f.size()}; }

SensorPacket decode_bytes(const py::bytes& data) {
    const std::string raw = data;
    const auto* p = reinterpret_cast<const std::uint8_t*>(raw.data());
    const DecodeResult r = decode({p, raw.size()});
    if (!r.ok()) throw py::value_error(std::string(to_string(r.status)));
    return r.packet;
}

py::dict outcome_dict(const GaitOutcome& o) {
    py::dict d;
    d["pose"] = o.new_pose;
    d["net_displacement"] = o.net_displacement;
    d["heading_change"] = o.heading_change;
    return d;
}

ProgressStats stats_from_distances(const std::vector<double>& distances) {
    std::vector<TrajectorySample> samples(distances.size());
    for (std::size_t i = 0; i < distances.size(); ++i) {
        samples[i].iteration = static_cast<int>(i);
        samples[i].distance_to_target = distances[i];
    }
    return progress_stats(samples);
}

}  // namespace

PYBIND11_MODULE(_wormsim, m) {
    m.doc() = "Peristaltic worm robot: gait model, sensing, telemetry frames, controller and closed-loop simulator.";

    py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
    py::register_exception<GaitError>(m, "GaitError", PyExc_ValueError);
    py::register_exception<CalibrationError>(m, "CalibrationError", PyExc_ValueError);

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<>())
        .def(py::init([](double x, double y) { return Vec2{x, y}; }), py::arg("x"), py::arg("y"))
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y)
        .def("__repr__", [](const Vec2& v) { return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")"; });

    py::class_<Pose>(m, "Pose")
        .def(py::init<>())
        .def(py::init([](double x, double y, double heading) { return Pose({x, y}, heading); }), py::arg("x"),
             py::arg("y"), py::arg("heading") = 0.0)
        .def_readonly("position", &Pose::position)
        .def_readonly("heading", &Pose::heading)
        .def_property_readonly("x", [](const Pose& p) { return p.position.x; })
        .def_property_readonly("y", [](const Pose& p) { return p.position.y; });

    py::class_<Arena>(m, "Arena").def(py::init<>()).def_readwrite("width", &Arena::width).def_readwrite("height", &Arena::height);
    py::class_<Peg>(m, "Peg")
        .def(py::init([](double x, double y, double r) { return Peg{{x, y}, r}; }), py::arg("x"), py::arg("y"),
             py::arg("r") = kDefaultPegRadius)
        .def_readwrite("center", &Peg::center)
        .def_readwrite("radius", &Peg::radius);
    py::class_<LightSource>(m, "LightSource")
        .def(py::init<>())
        .def_readwrite("position", &LightSource::position)
        .def_readwrite("power", &LightSource::power);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("arena", &Scenario::arena)
        .def_readwrite("pegs", &Scenario::pegs)
        .def_readwrite("light", &Scenario::light)
        .def_readwrite("start", &Scenario::start)
        .def_readwrite("reach_radius", &Scenario::reach_radius)
        .def("__eq__", [](const Scenario& a, const Scenario& b) { return a == b; });

    m.def("load_scenario", [](const std::string& text) { return load_scenario(text); });
    m.def("save_scenario", &save_scenario);
    m.def("validate_scenario", [](const Scenario& s) { validate(s); });
    m.def("generate_scenario",
          [](std::uint64_t seed, int pegs, const Scenario& base) { return generate_scenario(seed, pegs, base); },
          py::arg("seed"), py::arg("peg_count"), py::arg("template") = default_template());
    m.def("default_template", &default_template);
    m.def("canonical_scenario", [](const std::string& name) {
        auto s = canonical_scenario(name);
        if (!s) throw py::value_error("unknown canonical scenario: " + name);
        return *s;
    });
    m.def("disk_contact", &disk_contact);

    py::enum_<Side>(m, "Side").value("LEFT", Side::Left).value("RIGHT", Side::Right);
    py::enum_<CycleKind>(m, "CycleKind")
        .value("FORWARD", CycleKind::Forward)
        .value("LEFT", CycleKind::DirectionalLeft)
        .value("RIGHT", CycleKind::DirectionalRight);

    py::class_<GaitCalibration>(m, "GaitCalibration")
        .def(py::init<>())
        .def_readwrite("extension_gain", &GaitCalibration::extension_gain)
        .def_readwrite("extension_cap", &GaitCalibration::extension_cap)
        .def_readwrite("max_pressure", &GaitCalibration::max_pressure)
        .def_readwrite("anchor_slip", &GaitCalibration::anchor_slip)
        .def_readwrite("bend_gain", &GaitCalibration::bend_gain)
        .def_readwrite("turn_inverted", &GaitCalibration::turn_inverted)
        .def_property(
            "center_pressure", [](const GaitCalibration& c) { return c.pressures.center; },
            [](GaitCalibration& c, double v) { c.pressures.center = v; })
        .def_property(
            "back_pressure", [](const GaitCalibration& c) { return c.pressures.back; },
            [](GaitCalibration& c, double v) { c.pressures.back = v; })
        .def_property(
            "front_pressure", [](const GaitCalibration& c) { return c.pressures.front; },
            [](GaitCalibration& c, double v) { c.pressures.front = v; });

    py::class_<RobotCalibration>(m, "RobotCalibration")
        .def(py::init<>())
        .def_readwrite("gait", &RobotCalibration::gait)
        .def("to_json", [](const RobotCalibration& c) { return save_calibration(c); })
        .def("merged", [](const RobotCalibration& c, const std::string& fragment) {
            return merge_calibration(c, fragment);
        });

    m.def("pressure_to_extension", &pressure_to_extension, py::arg("pressure"), py::arg("calib") = GaitCalibration{});
    m.def("compile_turn", &compile_turn, py::arg("intent"), py::arg("calib") = GaitCalibration{});
    m.def("forward_displacement", &forward_displacement, py::arg("calib") = GaitCalibration{});
    m.def(
        "build_cycle",
        [](CycleKind kind, const GaitCalibration& calib) {
            py::list phases;
            for (const ActuationPhase& p : build_cycle(kind, calib).phases) {
                py::dict d;
                d["back_radial"] = p.back_radial;
                d["center_left"] = p.center_left;
                d["center_right"] = p.center_right;
                d["front_radial"] = p.front_radial;
                d["duration"] = p.duration;
                phases.append(d);
            }
            return phases;
        },
        py::arg("kind"), py::arg("calib") = GaitCalibration{});
    m.def(
        "apply_cycle",
        [](const Pose& pose, CycleKind kind, const GaitCalibration& calib) {
            return outcome_dict(apply_cycle(pose, build_cycle(kind, calib), calib));
        },
        py::arg("pose"), py::arg("kind"), py::arg("calib") = GaitCalibration{});

    py::class_<ContactFlags>(m, "ContactFlags")
        .def(py::init([](bool l, bool r) { return ContactFlags{l, r}; }), py::arg("left") = false,
             py::arg("right") = false)
        .def_readwrite("left", &ContactFlags::left)
        .def_readwrite("right", &ContactFlags::right);
    py::class_<LightPair>(m, "LightPair")
        .def(py::init([](std::uint16_t l, std::uint16_t r) { return LightPair{l, r}; }), py::arg("left") = 0,
             py::arg("right") = 0)
        .def_readwrite("left", &LightPair::left)
        .def_readwrite("right", &LightPair::right);
    py::class_<SensorPacket>(m, "SensorPacket")
        .def(py::init([](std::uint8_t seq, ContactFlags c, LightPair l) { return SensorPacket{seq, c, l}; }),
             py::arg("seq") = 0, py::arg("contact") = ContactFlags{}, py::arg("light") = LightPair{})
        .def_readwrite("seq", &SensorPacket::seq)
        .def_readwrite("contact", &SensorPacket::contact)
        .def_readwrite("light", &SensorPacket::light)
        .def("__eq__", [](const SensorPacket& a, const SensorPacket& b) { return a == b; });

    m.def("encode", [](const SensorPacket& p) { return frame_bytes(encode(p)); });
    m.def("decode", &decode_bytes);

    py::class_<ControllerState>(m, "ControllerState")
        .def(py::init<>())
        .def_property_readonly("mode", [](const ControllerState& s) { return s.mode == Mode::Seek ? "seek" : "avoid"; })
        .def_readwrite("last_avoid_side", &ControllerState::last_avoid_side);
    m.def("decide", [](const ControllerState& s, const SensorPacket& p) {
        auto [next, plan] = decide(s, p);
        return py::make_tuple(next, plan.str());
    });

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("max_iterations", &SimConfig::max_iterations)
        .def_readwrite("stuck_window", &SimConfig::stuck_window)
        .def_readwrite("stuck_epsilon", &SimConfig::stuck_epsilon)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("bypass_channel", &SimConfig::bypass_channel);
    py::class_<ChannelConfig>(m, "ChannelConfig")
        .def(py::init<>())
        .def_readwrite("rate_hz", &ChannelConfig::rate_hz)
        .def_readwrite("drop_probability", &ChannelConfig::drop_probability)
        .def_readwrite("corrupt_probability", &ChannelConfig::corrupt_probability);

    py::class_<RunResult>(m, "RunResult")
        .def_property_readonly("outcome", [](const RunResult& r) { return std::string(to_string(r.outcome)); })
        .def_readonly("iterations_used", &RunResult::iterations_used)
        .def_readonly("initial_distance", &RunResult::initial_distance)
        .def_readonly("final_distance", &RunResult::final_distance)
        .def_property_readonly("progress", [](const RunResult& r) { return py::make_tuple(r.progress.mean, r.progress.std); })
        .def_property_readonly("positions",
                               [](const RunResult& r) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const auto& s : r.trajectory) out.emplace_back(s.pose.position.x, s.pose.position.y);
                                   return out;
                               })
        .def_property_readonly("cycles",
                               [](const RunResult& r) {
                                   std::string s;
                                   for (CycleKind k : r.executed_cycles) s += to_string(k);
                                   return s;
                               })
        .def("csv", [](const RunResult& r) { return trajectory_csv(r.trajectory); });

    m.def(
        "run",
        [](const Scenario& s, const RobotCalibration& c, const ChannelConfig& ch, const SimConfig& sim) {
            py::gil_scoped_release release;
            return run(s, c, ch, sim);
        },
        py::arg("scenario"), py::arg("calib") = RobotCalibration{}, py::arg("channel") = ChannelConfig{},
        py::arg("sim") = SimConfig{});
    m.def("progress_stats", [](const std::vector<double>& d) {
        const ProgressStats s = stats_from_distances(d);
        return py::make_tuple(s.mean, s.std);
    });
    m.def(
        "sweep",
        [](const std::string& param, double lo, double hi, double step, const RobotCalibration& base) {
            const SweepResult r = run_sweep({param, lo, hi, step}, base);
            std::vector<std::pair<double, double>> rows;
            for (const SweepRow& row : r.rows) rows.emplace_back(row.value, row.objective);
            return py::make_tuple(rows, r.best.value);
        },
        py::arg("param"), py::arg("lo"), py::arg("hi"), py::arg("step"), py::arg("base") = RobotCalibration{});
    m.def("cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
