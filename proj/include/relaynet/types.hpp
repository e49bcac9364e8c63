// SPDX-License-Identifier: MIT
// relaynet: core model types shared by every module.
//
// Id conventions: agents are numbered 1..n with mobiles first (1..m) and
// statics after them (m+1..m+s). Flows get ids n+1..n+f so agent ids and
// flow ids can never collide and both can live in one vertex id space.
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relaynet/geometry.hpp"

namespace relaynet {

using AgentId = int;  ///< 1-based; mobiles 1..m, statics m+1..m+s.
using FlowId = int;   ///< n+1..n+f, disjoint from AgentId.
using Tick = std::int64_t;

/// One unidirectional information flow between two static endpoints.
struct Flow {
    FlowId id = 0;
    AgentId source = 0;       ///< static agent
    AgentId destination = 0;  ///< static agent, != source
    bool active = false;
};

/// Scheduled activation / deactivation of a flow at a given tick.
struct FlowEvent {
    Tick tick = 0;
    FlowId flow = 0;
    bool activate = false;  ///< true = activate, false = deactivate
};

/// Model and controller parameters. Radii must satisfy 0 < rho0 < rho1 < rho2:
/// rho0 is the collision radius, rho1 the connection radius (links form at or
/// below it) and rho2 the interaction radius (links persist until above it).
struct Params {
    double rho0 = 0.0;  ///< collision radius
    double rho1 = 0.0;  ///< connection radius
    double rho2 = 0.0;  ///< interaction radius
    double a = 0.0;     ///< link-quality sigmoid steepness
    double b = 0.0;     ///< link-quality sigmoid midpoint distance
    double beta = 0.0;  ///< attachment-vs-detachment command threshold weight
    double eps_w = 0.0; ///< waypoint arrival radius
    double eps_f = 0.0; ///< flow-line membership margin / proximity clamp
    double alpha = 0.0; ///< projection endpoint bias
    double dt = 0.0;    ///< integration step
    double vmax = 0.0;  ///< control saturation bound
    int icp_period = 25;  ///< allocation-plane cadence, in ticks

    /// Documented defaults for a workspace whose interaction radius is rho2:
    /// rho0 = 0.1*rho2, rho1 = 0.75*rho2, b = 0.6*rho2, a = 10/rho2,
    /// beta = 1.5, eps_w = eps_f = 0.05*rho2, alpha = 0.05, dt = 0.01,
    /// vmax = rho2/10, icp_period = 25.
    static Params defaults(double rho2);
};

/// Behavioral mode of a mobile agent. Statics are reported as kSwarming.
enum class BehaviorState : std::uint8_t {
    kSwarming = 0,     ///< local spacing control only
    kReconfigure = 1,  ///< navigating to a waypoint
};

/// Per-agent flow membership: the set of flows an agent currently relays for.
using Membership = std::vector<std::set<FlowId>>;  // index = AgentId, [0] unused

/// A relocation order: move `agent` toward the segment midpoint of `flow`.
struct IcpCommand {
    Tick tick = 0;
    AgentId agent = 0;
    FlowId flow = 0;
    bool operator==(const IcpCommand&) const = default;
};

/// Static description of an experiment. All parameters live here so a run is
/// reproducible from the file alone.
struct Scenario {
    int mobile_count = 0;
    int static_count = 0;
    std::vector<Vec2> mobile_positions;  ///< initial, size == mobile_count
    std::vector<Vec2> static_positions;  ///< fixed, size == static_count
    std::vector<Flow> flows;             ///< ids n+1..n+f, in id order
    std::vector<FlowEvent> events;       ///< sorted by tick on load
    Params params;
    Tick max_ticks = 0;
    std::uint64_t seed = 0;  ///< reserved for randomized variants; the shipped
                             ///< pipeline breaks every tie deterministically

    int agent_count() const { return mobile_count + static_count; }
    bool is_mobile(AgentId i) const { return i >= 1 && i <= mobile_count; }
    bool is_static(AgentId i) const { return i > mobile_count && i <= agent_count(); }
    const Flow* find_flow(FlowId f) const {
        for (const auto& fl : flows)
            if (fl.id == f) return &fl;
        return nullptr;
    }
};

}  // namespace relaynet
