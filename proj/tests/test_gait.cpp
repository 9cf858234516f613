#include <doctest.h>

#include <cmath>

#include "wormsim/gait.hpp"
#include "wormsim/rng.hpp"

using namespace wormsim;
using doctest::Approx;

TEST_CASE("pressure_to_extension") {
    const GaitCalibration c;
    CHECK(pressure_to_extension(0.0, c) == 0.0);
    CHECK(pressure_to_extension(55.0, c) == Approx(20.0).epsilon(1e-12));
    CHECK(pressure_to_extension(100.0, c) == Approx(36.3636).epsilon(1e-5));
    CHECK_THROWS_AS(pressure_to_extension(200.0, c), GaitError);
    CHECK_THROWS_AS(pressure_to_extension(-1.0, c), GaitError);

    GaitCalibration steep = c;
    steep.extension_gain = 1.0;
    CHECK(pressure_to_extension(90.0, steep) == 40.0);  // capped

    double prev = -1.0;
    for (double p = 0.0; p <= 100.0; p += 0.5) {
        const double e = pressure_to_extension(p, c);
        CHECK(e >= prev);
        prev = e;
    }
}

TEST_CASE("forward cycle matches the reported actuation schedule") {
    const GaitCalibration c;
    const GaitCycle cycle = build_cycle(CycleKind::Forward, c);
    REQUIRE(cycle.phases.size() == 5);
    const ActuationPhase& anchor = cycle.phases[0];
    CHECK(anchor.back_radial == 28.0);
    CHECK(anchor.duration == 1.0);
    const ActuationPhase& extend = cycle.phases[1];
    CHECK(extend.center_left == 55.0);
    CHECK(extend.center_right == 55.0);
    CHECK(extend.duration == 2.0);
    CHECK(extend.back_radial == 28.0);
    const ActuationPhase& swap = cycle.phases[2];
    CHECK(swap.front_radial == 42.0);
    CHECK(swap.back_radial == 0.0);
    const ActuationPhase& contract = cycle.phases[3];
    CHECK(contract.center_left == 0.0);
    CHECK(contract.center_right == 0.0);
    CHECK(contract.front_radial == 42.0);
    const ActuationPhase& release = cycle.phases[4];
    CHECK(release == ActuationPhase{0, 0, 0, 0, 1.0});
    CHECK(cycle.duration() == 7.0);
}

TEST_CASE("turn chamber selection") {
    GaitCalibration nominal;
    nominal.turn_inverted = false;
    GaitCalibration inverted;

    const GaitCycle right_nominal = build_cycle(CycleKind::DirectionalRight, nominal);
    CHECK(right_nominal.phases[1].center_left == 55.0);
    CHECK(right_nominal.phases[1].center_right == 0.0);

    const GaitCycle right_inverted = build_cycle(CycleKind::DirectionalRight, inverted);
    CHECK(right_inverted.phases[1].center_left == 0.0);
    CHECK(right_inverted.phases[1].center_right == 55.0);

    CHECK(compile_turn(Side::Left, nominal) == Side::Right);
    CHECK(compile_turn(Side::Left, inverted) == Side::Left);
    for (Side intent : {Side::Left, Side::Right}) {
        CHECK(compile_turn(intent, nominal) != compile_turn(intent, inverted));
        CHECK(realized_turn(compile_turn(intent, nominal), nominal) == intent);
        CHECK(realized_turn(compile_turn(intent, inverted), inverted) == intent);
    }
}

TEST_CASE("apply_cycle forward") {
    GaitCalibration c;
    const GaitOutcome o = apply_cycle(Pose({0, 0}, 0), build_cycle(CycleKind::Forward, c), c);
    CHECK(o.net_displacement == Approx(10.0).epsilon(1e-12));
    CHECK(o.new_pose.position.x == Approx(10.0).epsilon(1e-12));
    CHECK(o.new_pose.position.y == 0.0);
    CHECK(o.new_pose.heading == 0.0);
    CHECK(o.heading_change == 0.0);

    c.anchor_slip = 0.0;
    CHECK(apply_cycle(Pose{}, build_cycle(CycleKind::Forward, c), c).net_displacement == Approx(20.0));
}

TEST_CASE("apply_cycle directional") {
    const GaitCalibration c;
    const GaitOutcome left = apply_cycle(Pose({0, 0}, 0), build_cycle(CycleKind::DirectionalLeft, c), c);
    CHECK(left.heading_change == Approx(0.105));
    CHECK(left.new_pose.heading == Approx(0.105));
    CHECK(left.net_displacement == Approx(5.0));
    CHECK(left.new_pose.position.x == Approx(5.0 * std::cos(0.105)));
    CHECK(left.new_pose.position.y == Approx(5.0 * std::sin(0.105)));

    const GaitOutcome right = apply_cycle(Pose({0, 0}, 0), build_cycle(CycleKind::DirectionalRight, c), c);
    CHECK(right.heading_change == Approx(-0.105));
    CHECK(right.new_pose.position.y < 0.0);

    GaitCalibration strong = c;
    strong.pressures.center = 82.5;
    CHECK(apply_cycle(Pose{}, build_cycle(CycleKind::DirectionalLeft, strong), strong).heading_change ==
          Approx(0.105 * 1.5));
}

TEST_CASE("gait properties") {
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        GaitCalibration c;
        c.turn_inverted = rng.bernoulli(0.5);
        c.anchor_slip = rng.uniform(0.0, 0.99);
        c.pressures.center = rng.uniform(1.0, 100.0);
        c.bend_gain = rng.uniform(0.01, 0.5);
        const Pose start({rng.uniform(-500, 500), rng.uniform(-500, 500)}, rng.uniform(-3, 3));

        const GaitOutcome fwd = apply_cycle(start, build_cycle(CycleKind::Forward, c), c);
        CHECK(fwd.new_pose.heading == start.heading);
        CHECK(fwd.net_displacement >= 0.0);
        CHECK(fwd.net_displacement ==
              Approx(pressure_to_extension(c.pressures.center, c) * (1.0 - c.anchor_slip)).epsilon(1e-12));

        // Realized turn always follows the intent, whatever the inversion flag.
        const GaitOutcome l = apply_cycle(start, build_cycle(CycleKind::DirectionalLeft, c), c);
        const GaitOutcome r = apply_cycle(start, build_cycle(CycleKind::DirectionalRight, c), c);
        CHECK(l.heading_change == Approx(c.bend_gain * c.pressures.center / 55.0));
        CHECK(r.heading_change == Approx(-c.bend_gain * c.pressures.center / 55.0));

        // A turn followed by its mirror restores the heading.
        const GaitOutcome back = apply_cycle(l.new_pose, build_cycle(CycleKind::DirectionalRight, c), c);
        CHECK(std::cos(back.new_pose.heading - start.heading) == Approx(1.0));
    }

    GaitCalibration c;
    double prev = -1.0;
    for (double p = 0.0; p <= 100.0; p += 5.0) {
        c.pressures.center = p;
        const double x = forward_displacement(c);
        CHECK(x >= prev);
        prev = x;
    }
    c = GaitCalibration{};
    c.anchor_slip = 0.999999;
    CHECK(forward_displacement(c) < 1e-4);
}

TEST_CASE("calibration validation") {
    GaitCalibration c;
    CHECK_NOTHROW(validate(c));
    c.anchor_slip = 1.0;
    CHECK_THROWS_AS(validate(c), GaitError);
    c = {};
    c.pressures.center = 150.0;
    CHECK_THROWS_AS(validate(c), GaitError);
    c = {};
    c.bend_gain = 0.0;
    CHECK_THROWS_AS(validate(c), GaitError);
}
