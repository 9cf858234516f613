#include "wormsim/controller.hpp"

#include <cstdlib>

namespace wormsim {

std::string CommandPlan::str() const {
    std::string out;
    for (CycleKind k : cycles) out += to_string(k);
    return out;
}

std::pair<ControllerState, CommandPlan> decide(const ControllerState& state, const SensorPacket& packet,
                                               const ControllerConfig& config) {
    ControllerState next = state;
    CommandPlan plan;
    const ContactFlags& contact = packet.contact;

    if (contact.any()) {
        Side away;
        if (contact.left && contact.right) {
            away = opposite(state.last_avoid_side);
        } else {
            away = contact.left ? Side::Right : Side::Left;
        }
        next.mode = Mode::Avoid;
        next.away_side = away;
        next.last_avoid_side = away;
        plan.cycles = {directional(away), directional(away), CycleKind::Forward};
    } else {
        next.mode = Mode::Seek;
        const int diff = static_cast<int>(packet.light.left) - static_cast<int>(packet.light.right);
        if (std::abs(diff) <= config.light_deadband) {
            plan.cycles = {CycleKind::Forward};
        } else {
            plan.cycles = {directional(diff > 0 ? Side::Left : Side::Right), CycleKind::Forward};
        }
    }
    next.plan_queue.assign(plan.cycles.begin(), plan.cycles.end());
    return {std::move(next), std::move(plan)};
}

std::optional<CycleKind> step_plan(ControllerState& state) {
    if (state.plan_queue.empty()) return std::nullopt;
    CycleKind k = state.plan_queue.front();
    state.plan_queue.pop_front();
    return k;
}

}  // namespace wormsim
