#include "wormsim/geometry.hpp"

#include <array>

namespace wormsim {

double normalize_angle(double theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double wrapped = std::remainder(theta, two_pi);  // [-pi, pi]
    if (wrapped <= -std::numbers::pi) wrapped += two_pi;
    return wrapped;
}

std::string_view to_string(WallSide side) {
    switch (side) {
        case WallSide::Left: return "left";
        case WallSide::Right: return "right";
        case WallSide::Bottom: return "bottom";
        case WallSide::Top: return "top";
    }
    return "?";
}

bool disk_contact(Vec2 a_center, double a_radius, Vec2 b_center, double b_radius) {
    const double reach = a_radius + b_radius;
    return (a_center - b_center).norm2() < reach * reach;
}

double wall_penetration(Vec2 p, double radius, const Arena& arena, WallSide side) {
    switch (side) {
        case WallSide::Left: return radius - p.x;
        case WallSide::Right: return p.x + radius - arena.width;
        case WallSide::Bottom: return radius - p.y;
        case WallSide::Top: return p.y + radius - arena.height;
    }
    return 0.0;
}

std::optional<WallSide> wall_contact(Vec2 p, double radius, const Arena& arena) {
    static constexpr std::array kOrder{WallSide::Left, WallSide::Right, WallSide::Bottom, WallSide::Top};
    std::optional<WallSide> best;
    double deepest = 0.0;
    for (WallSide side : kOrder) {
        const double depth = wall_penetration(p, radius, arena, side);
        if (depth > deepest) {
            deepest = depth;
            best = side;
        }
    }
    return best;
}

}  // namespace wormsim
