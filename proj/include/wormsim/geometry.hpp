#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string_view>

namespace wormsim {

/// Planar vector, millimeters.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr bool operator==(const Vec2&) const = default;

    double norm() const { return std::hypot(x, y); }
    constexpr double norm2() const { return x * x + y * y; }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }
inline Vec2 unit_from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Wraps an angle into (-pi, pi].
double normalize_angle(double theta);

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Nose position and heading. Heading is kept in (-pi, pi].
struct Pose {
    Vec2 position;
    double heading = 0.0;

    Pose() = default;
    Pose(Vec2 p, double theta) : position(p), heading(normalize_angle(theta)) {}

    Vec2 heading_unit() const { return unit_from_angle(heading); }
    Pose rotated(double delta) const { return {position, heading + delta}; }
    Pose advanced(double mm) const { return {position + heading_unit() * mm, heading}; }

    bool operator==(const Pose&) const = default;
};

struct Arena {
    double width = 1520.0;
    double height = 910.0;

    bool contains(Vec2 p) const { return p.x >= 0.0 && p.y >= 0.0 && p.x <= width && p.y <= height; }
    bool operator==(const Arena&) const = default;
};

struct Peg {
    Vec2 center;
    double radius = 37.5;

    bool operator==(const Peg&) const = default;
};

struct LightSource {
    Vec2 position;
    double power = 1.0e6;

    bool operator==(const LightSource&) const = default;
};

enum class WallSide { Left, Right, Bottom, Top };

std::string_view to_string(WallSide side);

/// True iff the two disks overlap. Touching disks do not count.
bool disk_contact(Vec2 a_center, double a_radius, Vec2 b_center, double b_radius);

/// How far a disk at `p` reaches past `side`. Positive means penetration.
double wall_penetration(Vec2 p, double radius, const Arena& arena, WallSide side);

/// Wall penetrated most deeply by the disk, or nullopt when the disk is inside.
/// Ties resolve in the order left, right, bottom, top.
std::optional<WallSide> wall_contact(Vec2 p, double radius, const Arena& arena);

}  // namespace wormsim
