#pragma once

#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wormsim/gait.hpp"
#include "wormsim/telemetry.hpp"

namespace wormsim {

enum class Mode { Seek, Avoid };

/// Ordered cycle intents. Directional kinds name the direction the body
/// should actually turn; chamber selection happens in the gait layer.
struct CommandPlan {
    std::vector<CycleKind> cycles;

    /// Compact form, e.g. "RRF" or "LF".
    std::string str() const;
    bool operator==(const CommandPlan&) const = default;
};

struct ControllerState {
    Mode mode = Mode::Seek;
    Side away_side = Side::Right;  // meaningful in Avoid mode
    Side last_avoid_side = Side::Right;
    std::deque<CycleKind> plan_queue;  // at most 3 entries

    bool operator==(const ControllerState&) const = default;
};

struct ControllerConfig {
    /// Light readings within this many counts of each other count as equal.
    int light_deadband = 0;
};

/// Contact outranks light. A touch on one side yields two turns away from it
/// and one forward cycle; a touch on both sides turns away from the previous
/// avoidance side. Without contact the robot turns toward the brighter eye
/// then steps forward, or just steps forward on a tie.
std::pair<ControllerState, CommandPlan> decide(const ControllerState& state, const SensorPacket& packet,
                                               const ControllerConfig& config = {});

/// Pops the next queued intent.
std::optional<CycleKind> step_plan(ControllerState& state);

}  // namespace wormsim
