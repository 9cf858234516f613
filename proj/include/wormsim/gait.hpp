#pragma once

#include <stdexcept>
#include <string_view>
#include <vector>

#include "wormsim/geometry.hpp"

namespace wormsim {

enum class Side { Left, Right };

constexpr Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
std::string_view to_string(Side s);

enum class CycleKind { Forward, DirectionalLeft, DirectionalRight };

std::string_view to_string(CycleKind kind);
constexpr CycleKind directional(Side s) { return s == Side::Left ? CycleKind::DirectionalLeft : CycleKind::DirectionalRight; }
constexpr bool is_directional(CycleKind k) { return k != CycleKind::Forward; }

/// Center pressure at which `bend_gain` is quoted.
inline constexpr double kReferenceCenterPressure = 55.0;

class GaitError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Pressures and timing of one step of the locomotion cycle.
struct ActuationPhase {
    double back_radial = 0.0;   // kPa
    double center_left = 0.0;   // kPa
    double center_right = 0.0;  // kPa
    double front_radial = 0.0;  // kPa
    double duration = 1.0;      // s

    bool operator==(const ActuationPhase&) const = default;
};

struct GaitCycle {
    CycleKind kind = CycleKind::Forward;
    std::vector<ActuationPhase> phases;

    double duration() const;
    bool operator==(const GaitCycle&) const = default;
};

struct GaitPressures {
    double back = 28.0;
    double center = 55.0;
    double front = 42.0;

    bool operator==(const GaitPressures&) const = default;
};

struct GaitDurations {
    double radial = 1.0;
    double center = 2.0;

    bool operator==(const GaitDurations&) const = default;
};

/// Every tuning constant of the gait model.
///
/// The default extension gain maps the 55 kPa center setpoint to a 20 mm
/// stroke; with half the stroke lost to anchor slip a forward cycle advances
/// the nose 10 mm.
struct GaitCalibration {
    double extension_gain = 20.0 / 55.0;  // mm per kPa
    double extension_cap = 40.0;          // mm
    double max_pressure = 100.0;          // kPa
    double anchor_slip = 0.5;             // fraction of stroke lost, [0, 1)
    double bend_gain = 0.105;             // rad per directional cycle at 55 kPa
    bool turn_inverted = true;
    GaitPressures pressures;
    GaitDurations durations;

    bool operator==(const GaitCalibration&) const = default;
};

void validate(const GaitCalibration& calib);

struct GaitOutcome {
    Pose new_pose;
    double net_displacement = 0.0;  // mm
    double heading_change = 0.0;    // rad
};

/// Linear chamber extension with a hard cap. Throws GaitError when p is
/// outside [0, max_pressure].
double pressure_to_extension(double pressure, const GaitCalibration& calib);

/// Chamber to pressurize so that the body ends up turning toward `intent`.
/// Nominally a chamber bends the body toward the unactuated side; with
/// `turn_inverted` the friction of the nose against the ceiling flips that.
Side compile_turn(Side intent, const GaitCalibration& calib);

/// Turn actually produced by pressurizing `chamber`. Inverse of compile_turn.
Side realized_turn(Side chamber, const GaitCalibration& calib);

/// Anchor back, extend, anchor front while releasing back, contract, release front.
GaitCycle build_cycle(CycleKind kind, const GaitCalibration& calib);

/// Net pose change of one full cycle.
GaitOutcome apply_cycle(const Pose& pose, const GaitCycle& cycle, const GaitCalibration& calib);

/// Displacement of a forward cycle at the given calibration.
double forward_displacement(const GaitCalibration& calib);

}  // namespace wormsim
