#include <doctest.h>

#include <cmath>

#include "wormsim/experiments.hpp"
#include "wormsim/rng.hpp"
#include "wormsim/simulator.hpp"

using namespace wormsim;
using doctest::Approx;

namespace {

Scenario straight_line() {
    Scenario s;
    s.start = Pose({200, 455}, 0);
    s.light = {{1300, 455}, 1e6};
    s.reach_radius = 100;
    return s;
}

double peg_gap(Vec2 nose, double r, const Peg& peg) { return distance(nose, peg.center) - peg.radius - r; }

}  // namespace

TEST_CASE("straight run in an empty arena") {
    const RunResult r = run(straight_line(), {}, {}, {});
    CHECK(r.outcome == Outcome::Reached);
    CHECK(r.iterations_used == 100);
    REQUIRE(r.trajectory.size() == 101);
    // Hand oracle: every iteration is a lone forward cycle of 20 mm * (1 - 0.5).
    for (std::size_t i = 0; i < r.trajectory.size(); ++i) {
        const TrajectorySample& s = r.trajectory[i];
        CHECK(s.iteration == static_cast<int>(i));
        CHECK(s.pose.position.x == Approx(200.0 + 10.0 * static_cast<double>(i)));
        CHECK(s.pose.position.y == 455.0);
        CHECK(s.pose.heading == 0.0);
        if (i > 0) CHECK(s.plan.str() == "F");
    }
    CHECK(r.progress.mean == Approx(10.0).epsilon(1e-12));
    CHECK(r.progress.std == Approx(0.0));
    CHECK(r.final_distance <= 100.0);
}

TEST_CASE("start inside the reach radius") {
    Scenario s = straight_line();
    s.start = Pose({1250, 455}, 0);
    const RunResult r = run(s, {}, {}, {});
    CHECK(r.outcome == Outcome::Reached);
    CHECK(r.iterations_used == 0);
    CHECK(r.trajectory.size() == 1);
}

TEST_CASE("lossless channel is transparent") {
    const Scenario s = canonical_top_right();
    SimConfig sim;
    sim.seed = 4;
    const RunResult via_channel = run(s, {}, {}, sim);
    sim.bypass_channel = true;
    const RunResult direct = run(s, {}, {}, sim);
    CHECK(trajectory_csv(via_channel.trajectory) == trajectory_csv(direct.trajectory));
}

TEST_CASE("lossy channel runs stay deterministic") {
    ChannelConfig ch;
    ch.drop_probability = 0.9;
    ch.corrupt_probability = 0.3;
    SimConfig sim;
    sim.seed = 12;
    const RunResult a = run(canonical_far_wall(), {}, ch, sim);
    const RunResult b = run(canonical_far_wall(), {}, ch, sim);
    CHECK(trajectory_csv(a.trajectory) == trajectory_csv(b.trajectory));
    CHECK(a.channel.dropped > 0);
    CHECK(a.channel.rejected > 0);
    CHECK(a.channel.sent == a.channel.delivered + a.channel.dropped + a.channel.rejected);
}

TEST_CASE("resolve_collisions") {
    Scenario s = straight_line();
    s.pegs.push_back({{700, 455}, 37.5});

    SUBCASE("pushed out along the center ray") {
        const CollisionResolution r = resolve_collisions(Pose({700 - 30, 455 + 40}, 0.3), 25, s);
        CHECK_FALSE(r.wedged);
        CHECK(distance(r.pose.position, {700, 455}) == Approx(62.5));
        CHECK(r.pose.position.x == Approx(700 - 30 * 62.5 / 50));
        CHECK(r.pose.position.y == Approx(455 + 40 * 62.5 / 50));
        CHECK(r.pose.heading == 0.3);
    }
    SUBCASE("clear pose is unchanged") {
        const Pose p({400, 300}, 1.0);
        const CollisionResolution r = resolve_collisions(p, 25, s);
        CHECK(r.pose == p);
        CHECK(r.passes == 0);
    }
    SUBCASE("peg and wall at once") {
        s.pegs = {{{85, 455}, 37.5}};
        const CollisionResolution r = resolve_collisions(Pose({30, 470}, 0), 25, s);
        CHECK_FALSE(r.wedged);
        CHECK(peg_gap(r.pose.position, 25, s.pegs[0]) >= -1e-6);
        CHECK(r.pose.position.x >= 25 - 1e-6);
    }
    SUBCASE("squeezed between a wall and a close peg") {
        s.pegs = {{{60, 455}, 37.5}};
        const CollisionResolution r = resolve_collisions(Pose({30, 460}, 0), 25, s);
        CHECK_FALSE(r.wedged);
        CHECK(peg_gap(r.pose.position, 25, s.pegs[0]) >= -1e-6);
        CHECK(r.pose.position.x >= 25 - 1e-6);
        CHECK(r.pose.position.x == Approx(25.0));
        CHECK(r.pose.position.y == Approx(455 + std::sqrt(62.5 * 62.5 - 35.0 * 35.0)));
    }
}

TEST_CASE("resolution never leaves the nose inside an obstacle") {
    Rng rng(8);
    for (int k = 0; k < 20; ++k) {
        const Scenario s = generate_scenario(rng.next(), 12, default_template());
        for (int i = 0; i < 200; ++i) {
            const Pose p({rng.uniform(-20, 1540), rng.uniform(-20, 930)}, rng.uniform(-3, 3));
            const CollisionResolution r = resolve_collisions(p, 25, s);
            REQUIRE_FALSE(r.wedged);
            CHECK(peg_penetration(r.pose.position, 25, s) <= 1e-6);
            CHECK(wall_penetration(r.pose.position, 25, s.arena) <= 1e-6);
        }
    }
}

TEST_CASE("progress_stats") {
    std::vector<TrajectorySample> t(3);
    t[0].distance_to_target = 110;
    t[1].distance_to_target = 100;
    t[2].distance_to_target = 90;
    const ProgressStats s = progress_stats(t);
    CHECK(s.mean == Approx(10.0));
    CHECK(s.std == Approx(0.0));

    t[2].distance_to_target = 80;  // steps 10, 20
    CHECK(progress_stats(t).mean == Approx(15.0));
    CHECK(progress_stats(t).std == Approx(std::sqrt(50.0)));

    CHECK_THROWS_AS(progress_stats(std::span(t).first(1)), std::invalid_argument);
}

TEST_CASE("stuck detection") {
    // Nose pinned against the far wall of a box it cannot leave, light dead
    // ahead: forward cycles keep getting projected back to the same spot.
    Scenario s;
    s.arena = {60, 60};
    s.start = Pose({30, 30}, 0);
    s.light = {{59, 30}, 1e6};
    s.reach_radius = 1;
    RobotCalibration calib;
    calib.nose.contact_margin = 0.0;
    SimConfig sim;
    sim.stuck_window = 10;
    const RunResult r = run(s, calib, {}, sim);
    CHECK(r.outcome == Outcome::Stuck);
    CHECK(r.iterations_used == 11);  // first window without movement is 1..11
}

TEST_CASE("timeout and divergence") {
    Scenario s = straight_line();
    SimConfig sim;
    sim.max_iterations = 20;
    CHECK(run(s, {}, {}, sim).outcome == Outcome::Timeout);

    // Facing away from the light the first few iterations still open the gap.
    s.start = Pose({700, 455}, 3.0);
    sim.max_iterations = 3;
    const RunResult r = run(s, {}, {}, sim);
    CHECK(r.outcome == Outcome::Diverged);
    CHECK(r.final_distance > r.initial_distance);
}

TEST_CASE("trajectory CSV") {
    const RunResult r = run(canonical_far_wall(), {}, {}, {});
    const std::string csv = trajectory_csv(r.trajectory);
    CHECK(csv.rfind(std::string(kTrajectoryCsvHeader) + "\n", 0) == 0);
    CHECK(csv.find("\n0,-,150,455,0,0,0,") != std::string::npos);

    const auto points = parse_trajectory_csv(csv);
    REQUIRE(points.size() == r.trajectory.size());
    CHECK(points.back().position.x == Approx(r.trajectory.back().pose.position.x).epsilon(1e-5));

    CHECK_THROWS(parse_trajectory_csv("x,y\n1,2\n"));
    CHECK_THROWS(parse_trajectory_csv(std::string(kTrajectoryCsvHeader) + "\n0,F,1,2\n"));
    CHECK_THROWS(parse_trajectory_csv(std::string(kTrajectoryCsvHeader) + "\n0,F,a,2,0,0,0,1,1,5\n"));
}
