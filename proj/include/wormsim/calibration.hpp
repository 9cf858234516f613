#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "wormsim/controller.hpp"
#include "wormsim/gait.hpp"
#include "wormsim/sensing.hpp"

namespace wormsim {

/// Everything tunable about the robot: gait, nose sensors, controller.
struct RobotCalibration {
    GaitCalibration gait;
    NoseGeometry nose;
    ControllerConfig controller;
};

class CalibrationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

void validate(const RobotCalibration& calib);

/// JSON document with every field, angles in degrees where the name says so.
std::string save_calibration(const RobotCalibration& calib);

/// Merges a JSON fragment over `base`. Unknown keys and type mismatches are
/// rejected with the dotted path of the offending field.
RobotCalibration merge_calibration(const RobotCalibration& base, std::string_view json_fragment);

}  // namespace wormsim
