#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wormsim/calibration.hpp"
#include "wormsim/scenario.hpp"
#include "wormsim/simulator.hpp"

namespace wormsim {

/// Empty 1520 x 910 mm arena, start at the left middle facing +x, light at
/// (1300, 455) mm.
Scenario default_template();

/// Hand-placed approximations of the two reference layouts: a light on the
/// far wall behind a peg field, and a light in the top-right corner.
Scenario canonical_far_wall();
Scenario canonical_top_right();

/// Looks up a canonical scenario by name ("far-wall" or "top-right").
std::optional<Scenario> canonical_scenario(std::string_view name);

/// Perturbs the start pose (+-10 mm in x, +-20 mm in y, +-5 deg) so repeated
/// runs on one layout are not identical. Deterministic in `seed`.
Scenario jitter_start(const Scenario& scenario, std::uint64_t seed);

/// One-line JSON summary of a run.
std::string run_summary_json(const RunResult& result, std::uint64_t seed);

struct RunSummary {
    int index = 0;
    std::uint64_t seed = 0;
    std::optional<std::string> error;  // scenario generation failure
    Outcome outcome = Outcome::Timeout;
    int iterations = 0;
    ProgressStats progress;
    double initial_distance = 0.0;
    double final_distance = 0.0;
    int wedged_events = 0;
    double max_peg_penetration = 0.0;
    double max_wall_penetration = 0.0;
};

struct OutcomeHistogram {
    int reached = 0;
    int diverged = 0;
    int stuck = 0;
    int timeout = 0;

    int total() const { return reached + diverged + stuck + timeout; }
    void add(Outcome o);
};

struct BatchReport {
    int peg_count = 0;
    int runs_requested = 0;
    std::uint64_t base_seed = 0;
    std::vector<RunSummary> runs;  // by run index
    OutcomeHistogram histogram;    // completed runs only
    int generation_failures = 0;
    ProgressStats progress;  // across per-run progress means

    std::string to_json() const;
};

inline constexpr int kReportSchemaVersion = 1;

struct MonteCarloOptions {
    int peg_count = 12;
    int runs = 100;
    std::uint64_t base_seed = 0;
    unsigned workers = 0;  // 0 picks the hardware concurrency
    Scenario base = default_template();
    RobotCalibration calib;
    ChannelConfig channel;
    SimConfig sim;
    bool keep_trajectories = false;
};

struct MonteCarloResult {
    BatchReport report;
    std::vector<std::optional<RunResult>> results;  // only when keep_trajectories
    std::vector<std::string> csv;                   // per run; empty on generation failure
};

/// Run i uses scenario generate_scenario(base_seed + i) and simulation seed
/// base_seed + i. Runs execute in parallel and are merged by index.
MonteCarloResult run_montecarlo(const MonteCarloOptions& options);

inline constexpr const char* kSweepParameters[] = {
    "extension_gain", "extension_cap",  "anchor_slip",     "bend_gain",       "center_pressure",
    "back_pressure",  "front_pressure", "radial_duration", "center_duration", "max_pressure",
};

struct SweepSpec {
    std::string parameter;
    double lo = 0.0;
    double hi = 0.0;
    double step = 1.0;
};

struct SweepRow {
    double value = 0.0;
    double objective = 0.0;  // forward-cycle net displacement, mm
};

struct SweepResult {
    std::vector<SweepRow> rows;
    SweepRow best;  // first maximum

    std::string csv() const;
};

/// Sets one named scalar of the calibration. Throws std::invalid_argument for
/// an unknown name.
void set_parameter(RobotCalibration& calib, std::string_view name, double value);
double get_parameter(const RobotCalibration& calib, std::string_view name);

SweepResult run_sweep(const SweepSpec& spec, const RobotCalibration& base = {});

/// Central finite difference of the forward-cycle displacement with respect
/// to one parameter.
double displacement_sensitivity(const RobotCalibration& calib, std::string_view parameter, double h = 1e-3);

/// Self-contained SVG: arena, pegs, light marker, one polyline per path.
std::string render_svg(const Scenario& scenario, const std::vector<std::vector<TrajectoryPoint>>& paths);

}  // namespace wormsim
