#include "wormsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "wormsim/rng.hpp"

namespace wormsim {

namespace {

constexpr int kMaxResolvePasses = 16;
constexpr double kPenetrationTolerance = 1e-9;  // mm

constexpr WallSide kWallSides[] = {WallSide::Left, WallSide::Right, WallSide::Bottom, WallSide::Top};

// One obstacle the nose disk must stay out of: a peg (by index) or a wall.
struct Constraint {
    bool is_peg = true;
    std::size_t peg = 0;
    WallSide wall = WallSide::Left;
};

class Obstacles {
public:
    Obstacles(const Scenario& s, double nose_radius, Vec2 fallback_dir)
        : s_(s), r_(nose_radius), fallback_(fallback_dir) {
        for (std::size_t i = 0; i < s.pegs.size(); ++i) all_.push_back({true, i, WallSide::Left});
        for (WallSide w : kWallSides) all_.push_back({false, 0, w});
    }

    const std::vector<Constraint>& all() const { return all_; }

    double penetration(const Constraint& c, Vec2 p) const {
        if (!c.is_peg) return wormsim::wall_penetration(p, r_, s_.arena, c.wall);
        const Peg& peg = s_.pegs[c.peg];
        return peg.radius + r_ - distance(p, peg.center);
    }

    double worst(Vec2 p) const {
        double w = -std::numeric_limits<double>::infinity();
        for (const Constraint& c : all_) w = std::max(w, penetration(c, p));
        return w;
    }

    Vec2 project(const Constraint& c, Vec2 p) const {
        if (c.is_peg) {
            const Peg& peg = s_.pegs[c.peg];
            const Vec2 off = p - peg.center;
            const double len = off.norm();
            const Vec2 dir = len > 0.0 ? off * (1.0 / len) : fallback_ * -1.0;
            return peg.center + dir * (peg.radius + r_);
        }
        switch (c.wall) {
            case WallSide::Left: return {r_, p.y};
            case WallSide::Right: return {s_.arena.width - r_, p.y};
            case WallSide::Bottom: return {p.x, r_};
            case WallSide::Top: return {p.x, s_.arena.height - r_};
        }
        return p;
    }

    // Points on the boundary of both constraints.
    std::vector<Vec2> corners(const Constraint& a, const Constraint& b) const {
        if (a.is_peg && b.is_peg) return circle_circle(a, b);
        if (a.is_peg) return circle_line(a, b);
        if (b.is_peg) return circle_line(b, a);
        return line_line(a, b);
    }

private:
    std::vector<Vec2> circle_circle(const Constraint& a, const Constraint& b) const {
        const Vec2 c1 = s_.pegs[a.peg].center, c2 = s_.pegs[b.peg].center;
        const double m1 = s_.pegs[a.peg].radius + r_, m2 = s_.pegs[b.peg].radius + r_;
        const Vec2 d = c2 - c1;
        const double len = d.norm();
        if (len == 0.0 || len > m1 + m2 || len < std::abs(m1 - m2)) return {};
        const double along = (m1 * m1 - m2 * m2 + len * len) / (2.0 * len);
        const double h = std::sqrt(std::max(0.0, m1 * m1 - along * along));
        const Vec2 u = d * (1.0 / len);
        const Vec2 n{-u.y, u.x};
        const Vec2 base = c1 + u * along;
        return {base + n * h, base - n * h};
    }

    std::vector<Vec2> circle_line(const Constraint& peg_c, const Constraint& wall_c) const {
        const Peg& peg = s_.pegs[peg_c.peg];
        const double m = peg.radius + r_;
        const bool vertical = wall_c.wall == WallSide::Left || wall_c.wall == WallSide::Right;
        const double line = project(wall_c, peg.center).*(vertical ? &Vec2::x : &Vec2::y);
        const double offset = line - (vertical ? peg.center.x : peg.center.y);
        if (std::abs(offset) > m) return {};
        const double h = std::sqrt(m * m - offset * offset);
        if (vertical) return {{line, peg.center.y + h}, {line, peg.center.y - h}};
        return {{peg.center.x + h, line}, {peg.center.x - h, line}};
    }

    std::vector<Vec2> line_line(const Constraint& a, const Constraint& b) const {
        const bool av = a.wall == WallSide::Left || a.wall == WallSide::Right;
        const bool bv = b.wall == WallSide::Left || b.wall == WallSide::Right;
        if (av == bv) return {};
        const Vec2 pa = project(a, {0.0, 0.0}), pb = project(b, {0.0, 0.0});
        return {av ? Vec2{pa.x, pb.y} : Vec2{pb.x, pa.y}};
    }

    const Scenario& s_;
    double r_;
    Vec2 fallback_;
    std::vector<Constraint> all_;
};

int frames_per_decision(double rate_hz, double seconds) {
    return std::max(1, static_cast<int>(std::floor(rate_hz * seconds + 1e-9)));
}

}  // namespace

void validate(const SimConfig& cfg) {
    if (cfg.max_iterations <= 0) throw std::invalid_argument("max_iterations must be > 0");
    if (cfg.stuck_window <= 0) throw std::invalid_argument("stuck_window must be > 0");
    if (!(cfg.stuck_epsilon > 0.0)) throw std::invalid_argument("stuck_epsilon must be > 0");
}

std::string_view to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::Reached: return "reached";
        case Outcome::Diverged: return "diverged";
        case Outcome::Stuck: return "stuck";
        case Outcome::Timeout: return "timeout";
    }
    return "?";
}

ProgressStats progress_stats(std::span<const TrajectorySample> trajectory) {
    if (trajectory.size() < 2) throw std::invalid_argument("progress_stats needs at least two samples");
    const std::size_t n = trajectory.size() - 1;
    double sum = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
        sum += trajectory[i - 1].distance_to_target - trajectory[i].distance_to_target;
    ProgressStats out;
    out.mean = sum / static_cast<double>(n);
    if (n > 1) {
        double ss = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            const double dev = trajectory[i - 1].distance_to_target - trajectory[i].distance_to_target - out.mean;
            ss += dev * dev;
        }
        out.std = std::sqrt(ss / static_cast<double>(n - 1));
    }
    return out;
}

double peg_penetration(Vec2 nose, double nose_radius, const Scenario& scenario) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const Peg& peg : scenario.pegs) worst = std::max(worst, peg.radius + nose_radius - distance(nose, peg.center));
    return worst;
}

double wall_penetration(Vec2 nose, double nose_radius, const Arena& arena) {
    double worst = -std::numeric_limits<double>::infinity();
    for (WallSide w : kWallSides) worst = std::max(worst, wormsim::wall_penetration(nose, nose_radius, arena, w));
    return worst;
}

CollisionResolution resolve_collisions(const Pose& pose, double nose_radius, const Scenario& scenario) {
    const Obstacles obstacles(scenario, nose_radius, pose.heading_unit());
    const Vec2 origin = pose.position;
    Vec2 p = origin;
    Vec2 best = p;
    double best_worst = obstacles.worst(p);

    CollisionResolution out;
    for (int pass = 0; pass < kMaxResolvePasses; ++pass) {
        if (obstacles.worst(p) <= kPenetrationTolerance) {
            out.pose = Pose(p, pose.heading);
            out.passes = pass;
            return out;
        }
        for (const Constraint& c : obstacles.all()) {
            if (obstacles.penetration(c, p) > kPenetrationTolerance) p = obstacles.project(c, p);
        }
        out.passes = pass + 1;
        const double w = obstacles.worst(p);
        if (w < best_worst) {
            best_worst = w;
            best = p;
        }
    }
    if (obstacles.worst(p) <= kPenetrationTolerance) {
        out.pose = Pose(p, pose.heading);
        return out;
    }

    // Alternating pushes did not settle: the nose is squeezed between two
    // obstacles. Take the nearest point that touches both and clears all.
    std::vector<Constraint> near;
    for (const Constraint& c : obstacles.all()) {
        if (obstacles.penetration(c, p) > -nose_radius || obstacles.penetration(c, origin) > 0.0) near.push_back(c);
    }
    std::optional<Vec2> corner;
    double corner_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < near.size(); ++i) {
        for (std::size_t j = i + 1; j < near.size(); ++j) {
            for (Vec2 q : obstacles.corners(near[i], near[j])) {
                if (obstacles.worst(q) > kPenetrationTolerance) continue;
                const double d = distance(q, origin);
                if (d < corner_dist) {
                    corner_dist = d;
                    corner = q;
                }
            }
        }
    }
    if (corner) {
        out.pose = Pose(*corner, pose.heading);
        return out;
    }
    out.pose = Pose(best, pose.heading);
    out.wedged = true;
    return out;
}

RunResult run(const Scenario& scenario, const RobotCalibration& calib, const ChannelConfig& channel,
              const SimConfig& sim) {
    validate(scenario);
    validate(calib);
    validate(channel);
    validate(sim);

    Rng rng(sim.seed);
    const NoseGeometry& nose = calib.nose;
    const Vec2 target = scenario.light.position;

    RunResult result;
    auto sample_at = [&](int iteration, CommandPlan plan, const Pose& pose) {
        TrajectorySample s;
        s.iteration = iteration;
        s.plan = std::move(plan);
        s.pose = pose;
        s.contact = detect_contact(pose, nose, scenario);
        s.light = read_photodiodes(pose, nose, scenario.light, &rng);
        s.distance_to_target = distance(pose.position, target);
        return s;
    };

    Pose pose = scenario.start;
    result.trajectory.push_back(sample_at(0, {}, pose));
    result.initial_distance = result.trajectory.back().distance_to_target;
    result.max_peg_penetration = peg_penetration(pose.position, nose.radius, scenario);
    result.max_wall_penetration = wall_penetration(pose.position, nose.radius, scenario.arena);

    ControllerState state;
    std::optional<CommandPlan> last_plan;
    std::uint8_t seq = 0;
    double last_cycle_seconds = 0.0;
    bool finished = result.initial_distance <= scenario.reach_radius;
    if (finished) result.outcome = Outcome::Reached;

    for (int it = 1; !finished && it <= sim.max_iterations; ++it) {
        const TrajectorySample& now = result.trajectory.back();

        // The nose cone keeps streaming the same reading while the last cycle
        // ran; the control board only acts on the newest frame it accepted.
        std::optional<SensorPacket> received;
        const int frames = it == 1 ? 1 : frames_per_decision(channel.rate_hz, last_cycle_seconds);
        for (int f = 0; f < frames; ++f) {
            const SensorPacket packet{seq++, now.contact, now.light};
            if (sim.bypass_channel) {
                received = packet;
                ++result.channel.sent;
                ++result.channel.delivered;
            } else if (auto got = channel_step(packet, channel, rng, &result.channel)) {
                received = got;
            }
        }

        CommandPlan plan;
        if (received) {
            std::tie(state, plan) = decide(state, *received, calib.controller);
        } else {
            plan = last_plan.value_or(CommandPlan{{CycleKind::Forward}});
            state.plan_queue.assign(plan.cycles.begin(), plan.cycles.end());
        }
        last_plan = plan;

        while (auto kind = step_plan(state)) {
            const GaitCycle cycle = build_cycle(*kind, calib.gait);
            const GaitOutcome moved = apply_cycle(pose, cycle, calib.gait);
            const CollisionResolution resolved = resolve_collisions(moved.new_pose, nose.radius, scenario);
            pose = resolved.pose;
            if (resolved.wedged) ++result.wedged_events;
            result.max_peg_penetration =
                std::max(result.max_peg_penetration, peg_penetration(pose.position, nose.radius, scenario));
            result.max_wall_penetration =
                std::max(result.max_wall_penetration, wall_penetration(pose.position, nose.radius, scenario.arena));
            result.executed_cycles.push_back(*kind);
            last_cycle_seconds = cycle.duration();
        }

        result.trajectory.push_back(sample_at(it, std::move(plan), pose));
        result.iterations_used = it;
        const TrajectorySample& latest = result.trajectory.back();

        if (latest.distance_to_target <= scenario.reach_radius) {
            result.outcome = Outcome::Reached;
            finished = true;
        } else if (it >= sim.stuck_window &&
                   distance(latest.pose.position,
                            result.trajectory[static_cast<std::size_t>(it - sim.stuck_window)].pose.position) <
                       sim.stuck_epsilon) {
            result.outcome = Outcome::Stuck;
            finished = true;
        }
    }

    result.final_distance = result.trajectory.back().distance_to_target;
    if (!finished) {
        result.outcome = result.final_distance > result.initial_distance ? Outcome::Diverged : Outcome::Timeout;
    }
    if (result.trajectory.size() >= 2) result.progress = progress_stats(result.trajectory);
    return result;
}

std::string trajectory_csv(std::span<const TrajectorySample> trajectory) {
    std::string out(kTrajectoryCsvHeader);
    out += '\n';
    for (const TrajectorySample& s : trajectory) {
        const std::string kind = s.plan.cycles.empty() ? "-" : s.plan.str();
        out += fmt::format("{},{},{:.6g},{:.6g},{:.6g},{},{},{},{},{:.6g}\n", s.iteration, kind, s.pose.position.x,
                           s.pose.position.y, s.pose.heading, s.contact.left ? 1 : 0, s.contact.right ? 1 : 0,
                           s.light.left, s.light.right, s.distance_to_target);
    }
    return out;
}

std::vector<TrajectoryPoint> parse_trajectory_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("trajectory CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kTrajectoryCsvHeader) throw std::invalid_argument("trajectory CSV header mismatch");

    constexpr std::size_t kColumns = 10;
    std::vector<TrajectoryPoint> points;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream row(line);
        for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
        if (cells.size() != kColumns)
            throw std::invalid_argument(fmt::format("line {}: expected {} columns, got {}", line_no, kColumns, cells.size()));
        TrajectoryPoint pt;
        try {
            std::size_t used = 0;
            pt.iteration = std::stoi(cells[0], &used);
            if (used != cells[0].size()) throw std::invalid_argument("iteration");
            pt.position.x = std::stod(cells[2], &used);
            if (used != cells[2].size()) throw std::invalid_argument("x_mm");
            pt.position.y = std::stod(cells[3], &used);
            if (used != cells[3].size()) throw std::invalid_argument("y_mm");
        } catch (const std::exception&) {
            throw std::invalid_argument(fmt::format("line {}: malformed numeric field", line_no));
        }
        if (!points.empty() && pt.iteration <= points.back().iteration)
            throw std::invalid_argument(fmt::format("line {}: iteration not increasing", line_no));
        points.push_back(pt);
    }
    return points;
}

}  // namespace wormsim
