#include <doctest.h>

#include <cmath>

#include "wormsim/rng.hpp"
#include "wormsim/sensing.hpp"

using namespace wormsim;
using doctest::Approx;

namespace {

Scenario open_arena() {
    Scenario s;
    s.start = Pose({200, 455}, 0);
    s.light = {{1300, 455}, 1e6};
    return s;
}

Pose mirror(const Pose& p, double axis_y) { return Pose({p.position.x, 2 * axis_y - p.position.y}, -p.heading); }

}  // namespace

TEST_CASE("light_intensity") {
    const LightSource light{{0, 0}, 1e6};
    CHECK(light_intensity(light, {100, 0}) == Approx(100.0));
    CHECK(light_intensity(light, {0, 5}) == Approx(10000.0));  // near-field clamp
    CHECK(light_intensity(light, {0, 400}) == Approx(light_intensity(light, {0, 200}) / 4.0));
}

TEST_CASE("read_photodiodes") {
    const NoseGeometry g;
    const LightSource light{{1000, 0}, 1e6};

    // Values from an independent evaluation of the sensor model at the two
    // eye positions (20 mm at +-0.52 rad): both eyes 103.553... -> 104 counts.
    const LightPair ahead = read_photodiodes(Pose({0, 0}, 0), g, light);
    CHECK(ahead.left == 104);
    CHECK(ahead.right == 104);

    const LightPair to_left = read_photodiodes(Pose({1000, -500}, 0), g, light);
    CHECK(to_left.left > to_left.right);

    const LightPair saturated = read_photodiodes(Pose({990, 0}, 0), g, LightSource{{1000, 0}, 1e9});
    CHECK(saturated.left == 65535);
}

TEST_CASE("photodiode mirror symmetry and ordinal invariance") {
    const NoseGeometry g;
    Rng rng(5);
    for (int i = 0; i < 500; ++i) {
        const Pose pose({rng.uniform(0, 1500), rng.uniform(0, 900)}, rng.uniform(-3.1, 3.1));
        const LightSource light{{rng.uniform(0, 1500), rng.uniform(0, 900)}, 1e6};
        const LightPair a = read_photodiodes(pose, g, light);

        // Reflect pose and light across y = 455.
        const LightSource mirrored{{light.position.x, 910 - light.position.y}, light.power};
        const LightPair b = read_photodiodes(mirror(pose, 455), g, mirrored);
        CHECK(a.left == b.right);
        CHECK(a.right == b.left);

        // Scaling the source never flips which eye is brighter before rounding.
        const double il = light_intensity(light, left_sensor_position(pose, g));
        const double ir = light_intensity(light, right_sensor_position(pose, g));
        const LightSource scaled{light.position, light.power * rng.uniform(0.1, 10)};
        const double sl = light_intensity(scaled, left_sensor_position(pose, g));
        const double sr = light_intensity(scaled, right_sensor_position(pose, g));
        CHECK((il > ir) == (sl > sr));
        CHECK((il < ir) == (sl < sr));
    }
}

TEST_CASE("sensor noise is seeded") {
    NoseGeometry g;
    g.noise_std = 3.0;
    const LightSource light{{500, 0}, 1e6};
    CHECK_THROWS(read_photodiodes(Pose{}, g, light));
    Rng a(9), b(9);
    bool differs = false;
    for (int i = 0; i < 50; ++i) {
        const LightPair x = read_photodiodes(Pose{}, g, light, &a);
        const LightPair y = read_photodiodes(Pose{}, g, light, &b);
        CHECK(x == y);
        differs |= x.left != x.right;
    }
    CHECK(differs);
}

TEST_CASE("detect_contact") {
    const NoseGeometry g;
    Scenario s = open_arena();
    const Pose pose({600, 455}, 0);

    SUBCASE("peg ahead-left") {
        const double b = std::numbers::pi / 4;
        s.pegs.push_back({{600 + 60 * std::cos(b), 455 + 60 * std::sin(b)}, 37.5});
        CHECK(detect_contact(pose, g, s) == ContactFlags{true, false});
    }
    SUBCASE("peg ahead-right") {
        const double b = -std::numbers::pi / 4;
        s.pegs.push_back({{600 + 60 * std::cos(b), 455 + 60 * std::sin(b)}, 37.5});
        CHECK(detect_contact(pose, g, s) == ContactFlags{false, true});
    }
    SUBCASE("nothing in range") {
        s.pegs.push_back({{800, 455}, 37.5});
        CHECK(detect_contact(pose, g, s) == ContactFlags{false, false});
    }
    SUBCASE("head-on") {
        s.pegs.push_back({{660, 455}, 37.5});
        CHECK(detect_contact(pose, g, s) == ContactFlags{true, true});
    }
    SUBCASE("resting exactly at contact distance still touches") {
        s.pegs.push_back({{600, 455 + 62.5}, 37.5});
        CHECK(detect_contact(pose, g, s) == ContactFlags{true, false});
    }
    SUBCASE("walls") {
        CHECK(detect_contact(Pose({1500, 455}, 0), g, s) == ContactFlags{true, true});
        CHECK(detect_contact(Pose({700, 890}, 0), g, s) == ContactFlags{true, false});
        CHECK(detect_contact(Pose({700, 20}, 0), g, s) == ContactFlags{false, true});
        CHECK(detect_contact(Pose({700, 20}, std::numbers::pi), g, s) == ContactFlags{true, false});
    }
}

TEST_CASE("contact mirror symmetry") {
    const NoseGeometry g;
    Rng rng(21);
    for (int i = 0; i < 300; ++i) {
        Scenario s = open_arena();
        const Pose pose({rng.uniform(200, 1300), rng.uniform(200, 700)}, rng.uniform(-3, 3));
        const double bearing = rng.uniform(-3.1, 3.1);
        const Vec2 c = pose.position + unit_from_angle(pose.heading + bearing) * rng.uniform(40, 70);
        s.pegs.push_back({c, 37.5});
        const ContactFlags a = detect_contact(pose, g, s);

        Scenario m = s;
        m.pegs[0].center.y = 910 - c.y;
        const ContactFlags b = detect_contact(mirror(pose, 455), g, m);
        CHECK(a.left == b.right);
        CHECK(a.right == b.left);
    }
}
