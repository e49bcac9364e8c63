// SPDX-License-Identifier: MIT
//
// Mutable per-tick world state shared by the two control planes and the
// simulation loop.  Everything is a plain value; copying a WorldState copies
// the whole simulation state, which is how determinism tests snapshot runs.
#pragma once

#include <optional>
#include <set>
#include <vector>

#include "relaynet/geometry.hpp"
#include "relaynet/proximity_graph.hpp"
#include "relaynet/types.hpp"

namespace relaynet {

struct WorldState {
    int mobile_count = 0;
    int static_count = 0;
    Params params;

    /// Live flow records; `active` flags mutate as scenario events fire.
    std::vector<Flow> flows;

    // Per-agent arrays indexed by AgentId; slot 0 is unused padding so ids
    // can index directly.  Mobile agents are 1..mobile_count, static agents
    // follow.  Statics never move, hold zero velocity, and are treated as
    // perpetually SWARMING by every behavior predicate.
    std::vector<Vec2> pos;
    std::vector<Vec2> vel;
    std::vector<BehaviorState> behavior;
    std::vector<std::optional<Vec2>> waypoint;
    std::vector<std::optional<FlowId>> command;  // pending reassignment target

    Membership membership;        // current flow memberships, [0] unused
    std::set<AgentId> bridges;    // agents currently flagged as bridges
    EdgeSet edges;                // proximity graph with hysteresis state
    Tick tick = 0;

    int agent_count() const { return mobile_count + static_count; }
    bool is_mobile(AgentId i) const { return i >= 1 && i <= mobile_count; }
    bool is_static(AgentId i) const { return i > mobile_count && i <= agent_count(); }

    /// Flow lookup by id; null when the id names no flow.
    const Flow* find_flow(FlowId id) const;

    /// Ids of currently active flows, ascending.
    std::vector<FlowId> active_flows() const;
};

/// Build the initial world from a scenario: positions laid out mobiles-first,
/// all agents SWARMING, no memberships or commands, proximity edges seeded
/// from every pair within the connection radius.
WorldState make_world(const Scenario& sc);

}  // namespace relaynet
