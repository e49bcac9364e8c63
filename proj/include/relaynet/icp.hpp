// SPDX-License-Identifier: MIT
//
// Information Control Plane: the slow global layer.  Each invocation
// recomputes flow backbones (minimum-cost paths between flow endpoints),
// contracts the network into a supergraph to find the bridge agents that
// keep flows mutually reachable, and may emit a single reassignment command
// moving one idle agent toward an under-served flow.
#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "relaynet/geometry.hpp"
#include "relaynet/proximity_graph.hpp"
#include "relaynet/types.hpp"
#include "relaynet/world.hpp"

namespace relaynet {

/// Minimum-cost path between two agents over the proximity graph, edges
/// weighted by link_weight of their current length.  Returns the full vertex
/// sequence src..dst inclusive.  Among equal-cost paths (compared with
/// relative tolerance 1e-9) the lexicographically smallest vertex sequence is
/// returned, so results are stable under map iteration order and platform
/// differences.  Throws ConnectivityFault when dst is unreachable from src
/// and DataError on out-of-range ids.
std::vector<AgentId> min_cost_path(const EdgeSet& es, const std::vector<Vec2>& pos,
                                   AgentId src, AgentId dst, const Params& p);

/// Memberships induced by the current geometry: for every active flow, each
/// vertex of its minimum-cost backbone path (endpoints included) is a member.
/// Inactive flows contribute nothing, so deactivation strips members
/// implicitly on the next recompute.  Throws ConnectivityFault when an active
/// flow's endpoints are disconnected.
Membership compute_membership(const EdgeSet& es, const std::vector<Vec2>& pos,
                              const std::vector<Flow>& flows, int num_agents,
                              const Params& p);

/// Contracted view of the network used for bridge detection.  Vertices live
/// in the shared id space: agent ids, then flow ids above them; `agent_limit`
/// separates the two ranges.
struct Supergraph {
    int agent_limit = 0;                    // ids <= agent_limit are agents
    std::vector<int> vertices;              // sorted
    std::set<std::pair<int, int>> edges;    // normalized unordered pairs

    bool has_vertex(int v) const;
    bool is_agent(int v) const { return v <= agent_limit; }
    std::vector<int> neighbors(int v) const;  // sorted
};

/// Build the supergraph: one vertex per active flow; one vertex per
/// non-member agent with proximity degree >= 2 (leaves cannot lie on any
/// bridge path and are pruned).  Edges join adjacent non-member agents, a
/// non-member to every flow owning an adjacent member, flows sharing a
/// dual-membership agent, and flows whose member sets touch directly --
/// exactly the edge set obtained by contracting each flow's members to a
/// single vertex.
Supergraph build_supergraph(const EdgeSet& es, const Membership& membership,
                            const std::vector<Flow>& flows);

/// Agents lying on hop-count shortest supergraph paths between every pair of
/// active flows (one path per pair, lexicographically smallest among ties).
/// These are the bridges: non-members whose position keeps distinct flows
/// mutually reachable.  Throws ConnectivityFault when some pair of active
/// flows has no supergraph path.
std::set<AgentId> detect_bridges(const Supergraph& sg, const std::vector<Flow>& flows);

/// All flow members plus all bridges, sorted.  The proximity subgraph induced
/// by this set must be connected -- it is the minimal skeleton the controller
/// relies on -- and a ConnectivityFault here means bridge detection is buggy,
/// not that the network drifted apart.
std::vector<AgentId> connected_core(const EdgeSet& es, const Membership& membership,
                                    const std::set<AgentId>& bridges);

/// Detachment candidate: a mobile agent serving no flow and bridging nothing,
/// provisionally attributed to the flow it currently helps most.
struct DetachChoice {
    AgentId agent = 0;
    FlowId provisional = 0;  // flow the agent most contributes to today
    double score = 0.0;      // sum of link weights to provisional-flow neighbors
};

/// Pick the agent cheapest to pull away: every mobile non-member non-bridge
/// agent is provisionally assigned to the active flow maximizing
/// sum(1/w_ij) over that flow's members within the interaction radius (ties:
/// lowest flow id), then the candidate minimizing the summed link weight to
/// its provisional flow's adjacent members wins (ties: lowest agent id).
/// Returns nothing when no agent is detachable.
std::optional<DetachChoice> best_detachment(const EdgeSet& es, const std::vector<Vec2>& pos,
                                            const Membership& membership,
                                            const std::set<AgentId>& bridges,
                                            const std::vector<Flow>& flows,
                                            int mobile_count, const Params& p);

/// Attachment target: the flow whose score a_k is largest.
struct AttachChoice {
    FlowId flow = 0;
    double score = 0.0;
};

/// Score each active flow k as a_k = (|V_k|+1) * sum over members j of
/// 1/max(dist(x_j, mid_k), eps_f), where mid_k is the midpoint of the flow's
/// endpoint segment, and return the argmax (ties: lowest flow id).  The
/// clamp keeps a member sitting exactly on the midpoint from producing an
/// infinite score.  Throws DataError when no flow is active.
AttachChoice best_attachment(const std::vector<Vec2>& pos, const Membership& membership,
                             const std::vector<Flow>& flows, const Params& p);

/// One full control-plane invocation over the world: recompute memberships,
/// supergraph, bridges, and the connected core (asserting its connectivity),
/// then weigh the best detachment against the best attachment and emit at
/// most one command when the attachment score exceeds beta times the
/// detachment score.  Mutates w.membership, w.bridges, and on emission
/// w.command[agent].  Returns the emitted command, if any.
std::optional<IcpCommand> icp_step(WorldState& w);

}  // namespace relaynet
