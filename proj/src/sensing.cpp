#include "wormsim/sensing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wormsim/rng.hpp"

namespace wormsim {

namespace {

constexpr double kHeadOnTolerance = 1e-9;

std::uint16_t to_counts(double value) {
    return static_cast<std::uint16_t>(std::lround(std::clamp(value, 0.0, 65535.0)));
}

void classify(const Pose& pose, Vec2 toward_unit, double radius, ContactFlags& flags) {
    const Vec2 contact_offset = toward_unit * radius;
    const double side = cross(pose.heading_unit(), contact_offset);
    if (std::abs(side) < kHeadOnTolerance) {
        flags.left = flags.right = true;
    } else if (side > 0.0) {
        flags.left = true;
    } else {
        flags.right = true;
    }
}

}  // namespace

void validate(const NoseGeometry& g) {
    if (!(g.radius > 0.0)) throw std::invalid_argument("nose.radius must be > 0");
    if (!(g.sensor_offset_angle > 0.0 && g.sensor_offset_angle < std::numbers::pi / 2))
        throw std::invalid_argument("nose.sensor_offset must be in (0, 90) degrees");
    if (!(g.sensor_radius >= 0.0)) throw std::invalid_argument("nose.sensor_radius must be >= 0");
    if (!(g.gain > 0.0)) throw std::invalid_argument("nose.gain must be > 0");
    if (!(g.contact_margin >= 0.0)) throw std::invalid_argument("nose.contact_margin must be >= 0");
    if (!(g.noise_std >= 0.0)) throw std::invalid_argument("nose.noise_std must be >= 0");
}

double light_intensity(const LightSource& light, Vec2 point) {
    const double d2 = (point - light.position).norm2();
    return light.power / std::max(d2, kLightNearField * kLightNearField);
}

Vec2 left_sensor_position(const Pose& pose, const NoseGeometry& geom) {
    return pose.position + unit_from_angle(pose.heading + geom.sensor_offset_angle) * geom.sensor_radius;
}

Vec2 right_sensor_position(const Pose& pose, const NoseGeometry& geom) {
    return pose.position + unit_from_angle(pose.heading - geom.sensor_offset_angle) * geom.sensor_radius;
}

LightPair read_photodiodes(const Pose& pose, const NoseGeometry& geom, const LightSource& light, Rng* noise) {
    double left = std::min(geom.gain * light_intensity(light, left_sensor_position(pose, geom)), 65535.0);
    double right = std::min(geom.gain * light_intensity(light, right_sensor_position(pose, geom)), 65535.0);
    if (geom.noise_std > 0.0) {
        if (noise == nullptr) throw std::invalid_argument("sensor noise enabled without a generator");
        left += geom.noise_std * noise->gaussian();
        right += geom.noise_std * noise->gaussian();
    }
    return {to_counts(left), to_counts(right)};
}

ContactFlags detect_contact(const Pose& pose, const NoseGeometry& geom, const Scenario& scenario) {
    ContactFlags flags;
    const double reach = geom.radius + geom.contact_margin;
    const Vec2 nose = pose.position;

    for (const Peg& peg : scenario.pegs) {
        if (!disk_contact(nose, reach, peg.center, peg.radius)) continue;
        const Vec2 offset = peg.center - nose;
        const double len = offset.norm();
        // A peg centered on the nose has no bearing; treat it as head-on.
        const Vec2 toward = len > 0.0 ? offset * (1.0 / len) : pose.heading_unit();
        classify(pose, toward, geom.radius, flags);
    }

    static constexpr std::array<std::pair<WallSide, Vec2>, 4> kWalls{{
        {WallSide::Left, {-1.0, 0.0}},
        {WallSide::Right, {1.0, 0.0}},
        {WallSide::Bottom, {0.0, -1.0}},
        {WallSide::Top, {0.0, 1.0}},
    }};
    for (const auto& [side, normal] : kWalls) {
        if (wall_penetration(nose, reach, scenario.arena, side) > 0.0) classify(pose, normal, geom.radius, flags);
    }
    return flags;
}

}  // namespace wormsim
