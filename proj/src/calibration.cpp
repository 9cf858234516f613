#include "wormsim/calibration.hpp"

#include "json.hpp"

namespace wormsim {

namespace {

using json = nlohmann::ordered_json;

json to_json(const RobotCalibration& c) {
    const GaitCalibration& g = c.gait;
    const NoseGeometry& n = c.nose;
    json j;
    j["extension_gain"] = g.extension_gain;
    j["extension_cap"] = g.extension_cap;
    j["max_pressure"] = g.max_pressure;
    j["anchor_slip"] = g.anchor_slip;
    j["bend_gain"] = g.bend_gain;
    j["turn_inverted"] = g.turn_inverted;
    j["pressures"] = {{"back", g.pressures.back}, {"center", g.pressures.center}, {"front", g.pressures.front}};
    j["durations"] = {{"radial", g.durations.radial}, {"center", g.durations.center}};
    j["light_deadband"] = c.controller.light_deadband;
    j["nose"] = {
        {"radius", n.radius},
        {"sensor_offset_deg", rad_to_deg(n.sensor_offset_angle)},
        {"sensor_radius", n.sensor_radius},
        {"gain", n.gain},
        {"contact_margin", n.contact_margin},
        {"noise_std", n.noise_std},
    };
    return j;
}

RobotCalibration from_json(const json& j, const RobotCalibration& base) {
    RobotCalibration c = base;
    GaitCalibration& g = c.gait;
    NoseGeometry& n = c.nose;
    g.extension_gain = j["extension_gain"].get<double>();
    g.extension_cap = j["extension_cap"].get<double>();
    g.max_pressure = j["max_pressure"].get<double>();
    g.anchor_slip = j["anchor_slip"].get<double>();
    g.bend_gain = j["bend_gain"].get<double>();
    g.turn_inverted = j["turn_inverted"].get<bool>();
    g.pressures = {j["pressures"]["back"].get<double>(), j["pressures"]["center"].get<double>(),
                   j["pressures"]["front"].get<double>()};
    g.durations = {j["durations"]["radial"].get<double>(), j["durations"]["center"].get<double>()};
    c.controller.light_deadband = j["light_deadband"].get<int>();
    const json& nj = j["nose"];
    // Unchanged angles skip the degree round trip so defaults stay bit-exact.
    const double offset_deg = nj["sensor_offset_deg"].get<double>();
    if (offset_deg != rad_to_deg(base.nose.sensor_offset_angle)) n.sensor_offset_angle = deg_to_rad(offset_deg);
    n.radius = nj["radius"].get<double>();
    n.sensor_radius = nj["sensor_radius"].get<double>();
    n.gain = nj["gain"].get<double>();
    n.contact_margin = nj["contact_margin"].get<double>();
    n.noise_std = nj["noise_std"].get<double>();
    return c;
}

void overlay(json& target, const json& patch, const std::string& path) {
    if (!patch.is_object()) throw CalibrationError((path.empty() ? "calibration" : path) + ": expected an object");
    for (const auto& [key, value] : patch.items()) {
        const std::string where = path.empty() ? key : path + "." + key;
        auto it = target.find(key);
        if (it == target.end()) throw CalibrationError(where + ": unknown field");
        if (it->is_object()) {
            overlay(*it, value, where);
        } else if (it->is_boolean()) {
            if (!value.is_boolean()) throw CalibrationError(where + ": expected a boolean");
            *it = value;
        } else if (it->is_number_integer()) {
            if (!value.is_number_integer()) throw CalibrationError(where + ": expected an integer");
            *it = value;
        } else {
            if (!value.is_number()) throw CalibrationError(where + ": expected a number");
            *it = value.get<double>();
        }
    }
}

}  // namespace

void validate(const RobotCalibration& calib) {
    try {
        validate(calib.gait);
        validate(calib.nose);
    } catch (const std::invalid_argument& e) {
        throw CalibrationError(e.what());
    }
    if (calib.controller.light_deadband < 0) throw CalibrationError("light_deadband must be >= 0");
}

std::string save_calibration(const RobotCalibration& calib) { return to_json(calib).dump(2) + "\n"; }

RobotCalibration merge_calibration(const RobotCalibration& base, std::string_view json_fragment) {
    json patch;
    try {
        patch = json::parse(json_fragment);
    } catch (const json::parse_error& e) {
        throw CalibrationError("calibration: parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    json merged = to_json(base);
    overlay(merged, patch, "");
    RobotCalibration out = from_json(merged, base);
    validate(out);
    return out;
}

}  // namespace wormsim
