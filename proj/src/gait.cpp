#include "wormsim/gait.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace wormsim {

std::string_view to_string(Side s) { return s == Side::Left ? "left" : "right"; }

std::string_view to_string(CycleKind kind) {
    switch (kind) {
        case CycleKind::Forward: return "F";
        case CycleKind::DirectionalLeft: return "L";
        case CycleKind::DirectionalRight: return "R";
    }
    return "?";
}

double GaitCycle::duration() const {
    return std::accumulate(phases.begin(), phases.end(), 0.0,
                           [](double acc, const ActuationPhase& p) { return acc + p.duration; });
}

void validate(const GaitCalibration& c) {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(c.extension_gain)) throw GaitError("extension_gain must be > 0");
    if (!positive(c.extension_cap)) throw GaitError("extension_cap must be > 0");
    if (!positive(c.max_pressure)) throw GaitError("max_pressure must be > 0");
    if (!(c.anchor_slip >= 0.0 && c.anchor_slip < 1.0)) throw GaitError("anchor_slip must be in [0, 1)");
    if (!positive(c.bend_gain)) throw GaitError("bend_gain must be > 0");
    for (double p : {c.pressures.back, c.pressures.center, c.pressures.front}) {
        if (!(p >= 0.0 && p <= c.max_pressure))
            throw GaitError(fmt::format("pressure {} kPa outside [0, {}]", p, c.max_pressure));
    }
    if (!positive(c.durations.radial) || !positive(c.durations.center))
        throw GaitError("phase durations must be > 0");
}

double pressure_to_extension(double pressure, const GaitCalibration& calib) {
    if (!(pressure >= 0.0 && pressure <= calib.max_pressure))
        throw GaitError(fmt::format("pressure {} kPa outside [0, {}]", pressure, calib.max_pressure));
    return std::min(calib.extension_gain * pressure, calib.extension_cap);
}

Side compile_turn(Side intent, const GaitCalibration& calib) {
    return calib.turn_inverted ? intent : opposite(intent);
}

Side realized_turn(Side chamber, const GaitCalibration& calib) {
    return calib.turn_inverted ? chamber : opposite(chamber);
}

GaitCycle build_cycle(CycleKind kind, const GaitCalibration& calib) {
    const auto& p = calib.pressures;
    const auto& d = calib.durations;

    double left = p.center;
    double right = p.center;
    if (is_directional(kind)) {
        const Side intent = kind == CycleKind::DirectionalLeft ? Side::Left : Side::Right;
        const Side chamber = compile_turn(intent, calib);
        (chamber == Side::Left ? right : left) = 0.0;
    }

    GaitCycle cycle{kind, {}};
    cycle.phases = {
        {p.back, 0.0, 0.0, 0.0, d.radial},     // anchor back
        {p.back, left, right, 0.0, d.center},  // extend
        {0.0, left, right, p.front, d.radial}, // anchor front, release back
        {0.0, 0.0, 0.0, p.front, d.center},    // contract
        {0.0, 0.0, 0.0, 0.0, d.radial},        // release front
    };
    return cycle;
}

GaitOutcome apply_cycle(const Pose& pose, const GaitCycle& cycle, const GaitCalibration& calib) {
    if (cycle.phases.empty()) throw GaitError("gait cycle has no phases");
    double peak_left = 0.0;
    double peak_right = 0.0;
    for (const ActuationPhase& phase : cycle.phases) {
        for (double v : {phase.back_radial, phase.center_left, phase.center_right, phase.front_radial}) {
            if (!(v >= 0.0 && v <= calib.max_pressure))
                throw GaitError(fmt::format("pressure {} kPa outside [0, {}]", v, calib.max_pressure));
        }
        if (!(phase.duration > 0.0)) throw GaitError("phase duration must be > 0");
        peak_left = std::max(peak_left, phase.center_left);
        peak_right = std::max(peak_right, phase.center_right);
    }

    const double keep = 1.0 - calib.anchor_slip;
    GaitOutcome out;
    if (cycle.kind == CycleKind::Forward) {
        const double stroke =
            0.5 * (pressure_to_extension(peak_left, calib) + pressure_to_extension(peak_right, calib));
        out.net_displacement = stroke * keep;
        out.new_pose = pose.advanced(out.net_displacement);
        return out;
    }

    // Exactly one chamber carries pressure in a directional cycle; the larger
    // peak identifies it.
    const Side chamber = peak_left >= peak_right ? Side::Left : Side::Right;
    const double p_center = std::max(peak_left, peak_right);
    const double sign = realized_turn(chamber, calib) == Side::Left ? 1.0 : -1.0;

    out.heading_change = sign * calib.bend_gain * (p_center / kReferenceCenterPressure);
    out.net_displacement = 0.5 * pressure_to_extension(p_center, calib) * keep;
    out.new_pose = pose.rotated(out.heading_change).advanced(out.net_displacement);
    return out;
}

double forward_displacement(const GaitCalibration& calib) {
    return apply_cycle(Pose{}, build_cycle(CycleKind::Forward, calib), calib).net_displacement;
}

}  // namespace wormsim
