// SPDX-License-Identifier: MIT
#include "relaynet/world.hpp"

#include <algorithm>

#include "relaynet/errors.hpp"

namespace relaynet {

const Flow* WorldState::find_flow(FlowId id) const {
    for (const auto& f : flows)
        if (f.id == id) return &f;
    return nullptr;
}

std::vector<FlowId> WorldState::active_flows() const {
    std::vector<FlowId> out;
    for (const auto& f : flows)
        if (f.active) out.push_back(f.id);
    std::sort(out.begin(), out.end());
    return out;
}

WorldState make_world(const Scenario& sc) {
    WorldState w;
    w.mobile_count = sc.mobile_count;
    w.static_count = sc.static_count;
    w.params = sc.params;
    w.flows = sc.flows;
    const int n = w.agent_count();
    if (static_cast<int>(sc.mobile_positions.size()) != sc.mobile_count ||
        static_cast<int>(sc.static_positions.size()) != sc.static_count)
        throw DataError("make_world: position lists do not match agent counts");
    w.pos.assign(static_cast<std::size_t>(n) + 1, Vec2{0.0, 0.0});
    for (int i = 0; i < sc.mobile_count; ++i) w.pos[static_cast<std::size_t>(i) + 1] = sc.mobile_positions[static_cast<std::size_t>(i)];
    for (int i = 0; i < sc.static_count; ++i)
        w.pos[static_cast<std::size_t>(sc.mobile_count + i) + 1] = sc.static_positions[static_cast<std::size_t>(i)];
    w.vel.assign(static_cast<std::size_t>(n) + 1, Vec2{0.0, 0.0});
    w.behavior.assign(static_cast<std::size_t>(n) + 1, BehaviorState::kSwarming);
    w.waypoint.assign(static_cast<std::size_t>(n) + 1, std::nullopt);
    w.command.assign(static_cast<std::size_t>(n) + 1, std::nullopt);
    w.membership.assign(static_cast<std::size_t>(n) + 1, {});
    w.edges = initial_edges(w.pos, n, w.params);
    w.tick = 0;
    return w;
}

}  // namespace relaynet
