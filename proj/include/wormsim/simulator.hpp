#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wormsim/calibration.hpp"
#include "wormsim/controller.hpp"
#include "wormsim/scenario.hpp"
#include "wormsim/telemetry.hpp"

namespace wormsim {

struct SimConfig {
    int max_iterations = 500;
    int stuck_window = 50;       // iterations
    double stuck_epsilon = 1.0;  // mm of nose displacement across the window
    std::uint64_t seed = 0;
    bool bypass_channel = false;  // hand packets straight to the controller
};

void validate(const SimConfig& cfg);

enum class Outcome { Reached, Diverged, Stuck, Timeout };

std::string_view to_string(Outcome outcome);

/// State after one control iteration (iteration 0 is the start pose). The
/// sensor fields are read at `pose` and drive the next decision.
struct TrajectorySample {
    int iteration = 0;
    CommandPlan plan;  // cycles executed to get here; empty for iteration 0
    Pose pose;
    ContactFlags contact;
    LightPair light;
    double distance_to_target = 0.0;
};

struct ProgressStats {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation; 0 for a single step
};

/// Per-iteration approach toward the target. Throws std::invalid_argument
/// for fewer than two samples.
ProgressStats progress_stats(std::span<const TrajectorySample> trajectory);

struct RunResult {
    Outcome outcome = Outcome::Timeout;
    int iterations_used = 0;
    std::vector<TrajectorySample> trajectory;
    ProgressStats progress;  // zeros when no iteration ran
    std::vector<CycleKind> executed_cycles;
    ChannelStats channel;
    int wedged_events = 0;
    double max_peg_penetration = 0.0;   // mm, over every resolved cycle
    double max_wall_penetration = 0.0;  // mm
    double initial_distance = 0.0;
    double final_distance = 0.0;
};

struct CollisionResolution {
    Pose pose;
    bool wedged = false;
    int passes = 0;
};

/// Pushes the nose disk out of every peg and wall it penetrates, heading
/// unchanged. Each push is the shortest move along that obstacle's normal;
/// passes repeat until nothing penetrates, at most 16 times. A nose caught
/// between two obstacles is placed on the nearest point touching both.
CollisionResolution resolve_collisions(const Pose& pose, double nose_radius, const Scenario& scenario);

/// Deepest overlap of the nose disk with any peg interior (<= 0 when clear).
double peg_penetration(Vec2 nose, double nose_radius, const Scenario& scenario);
double wall_penetration(Vec2 nose, double nose_radius, const Arena& arena);

/// Closed loop: sense, transmit, decide, actuate, resolve collisions, record.
RunResult run(const Scenario& scenario, const RobotCalibration& calib, const ChannelConfig& channel,
              const SimConfig& sim);

inline constexpr std::string_view kTrajectoryCsvHeader =
    "iteration,cycle_kind,x_mm,y_mm,theta_rad,contact_left,contact_right,light_left,light_right,dist_to_target_mm";

std::string trajectory_csv(std::span<const TrajectorySample> trajectory);

/// Nose path parsed back from a trajectory CSV.
struct TrajectoryPoint {
    int iteration = 0;
    Vec2 position;
};

/// Throws std::invalid_argument when the text does not follow the trajectory schema.
std::vector<TrajectoryPoint> parse_trajectory_csv(std::string_view text);

}  // namespace wormsim
