#pragma once

#include <cstdint>

#include "wormsim/geometry.hpp"
#include "wormsim/scenario.hpp"

namespace wormsim {

class Rng;

/// Nose-cone layout and sensor response.
struct NoseGeometry {
    double radius = 25.0;               // mm, collision disk of the nose
    double sensor_offset_angle = 0.52;  // rad either side of the heading
    double sensor_radius = 20.0;        // mm from nose center to each phototransistor
    double gain = 100.0;                // counts per intensity unit
    double contact_margin = 1.0;        // mm, capacitive strips fire this close to a surface
    double noise_std = 0.0;             // counts, Gaussian, 0 disables

    bool operator==(const NoseGeometry&) const = default;
};

void validate(const NoseGeometry& geom);

struct LightPair {
    std::uint16_t left = 0;
    std::uint16_t right = 0;

    bool operator==(const LightPair&) const = default;
};

struct ContactFlags {
    bool left = false;
    bool right = false;

    bool any() const { return left || right; }
    bool operator==(const ContactFlags&) const = default;
};

inline constexpr double kLightNearField = 10.0;  // mm

/// Inverse-square falloff, clamped inside kLightNearField.
double light_intensity(const LightSource& light, Vec2 point);

Vec2 left_sensor_position(const Pose& pose, const NoseGeometry& geom);
Vec2 right_sensor_position(const Pose& pose, const NoseGeometry& geom);

/// Phototransistor counts. When geom.noise_std > 0 the noise is drawn from
/// `noise` (which must then be non-null).
LightPair read_photodiodes(const Pose& pose, const NoseGeometry& geom, const LightSource& light,
                           Rng* noise = nullptr);

/// Contact strips. Each touching peg or wall sets the flag on the side it is
/// on relative to the heading; a dead-ahead (or dead-behind) touch sets both.
ContactFlags detect_contact(const Pose& pose, const NoseGeometry& geom, const Scenario& scenario);

}  // namespace wormsim
