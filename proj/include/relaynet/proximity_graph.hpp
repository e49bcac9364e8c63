// SPDX-License-Identifier: MIT
// relaynet: hysteretic proximity graph.
//
// A link forms when two agents come within the connection radius rho1 and is
// torn down only when they separate beyond the interaction radius rho2; a
// pair at exactly rho2 keeps its link. The gap (rho1, rho2] is a hysteresis
// band that stops links from flapping near the threshold.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "relaynet/geometry.hpp"
#include "relaynet/types.hpp"

namespace relaynet {

using Edge = std::pair<AgentId, AgentId>;  // normalized so first < second

inline Edge make_edge(AgentId i, AgentId j) { return i < j ? Edge{i, j} : Edge{j, i}; }

/// Undirected link set over agents 1..num_agents, with per-link bookkeeping.
struct EdgeSet {
    int num_agents = 0;
    std::set<Edge> edges;
    std::map<Edge, Tick> established;  ///< tick each current link formed
    /// Links removed by the latest update whose retention predicate held at
    /// removal time — should stay empty when the controllers do their job.
    std::vector<Edge> dropped_retained;

    bool contains(AgentId i, AgentId j) const { return edges.count(make_edge(i, j)) > 0; }
};

/// Retention predicate fed to update_edges purely for diagnostics.
using RetainPredicate = std::function<bool(AgentId, AgentId)>;

/// Build the link set of a fresh deployment: every pair within rho1.
EdgeSet initial_edges(const std::vector<Vec2>& pos, int num_agents, const Params& p);

/// Advance the link set one step: add pairs with d <= rho1, drop pairs with
/// d > rho2, keep everything in between. `retain` is only consulted to record
/// diagnostic drops; it never changes the result.
EdgeSet update_edges(const EdgeSet& prev, const std::vector<Vec2>& pos, Tick tick,
                     const Params& p, const RetainPredicate* retain = nullptr);

/// Sorted neighbor ids of `i`. Throws DataError for ids outside 1..num_agents.
std::vector<AgentId> neighbors(const EdgeSet& es, AgentId i);

/// True iff the subgraph induced on `vertices` is connected (edges with both
/// endpoints in the set). Throws DataError on an empty vertex list.
bool is_connected(const EdgeSet& es, const std::vector<AgentId>& vertices);

/// Members of flow `k` together with the links joining two of its members.
struct FlowSubgraph {
    std::vector<AgentId> vertices;  // sorted
    std::vector<Edge> edges;        // sorted
};
FlowSubgraph flow_subgraph(const EdgeSet& es, const Membership& membership, FlowId k);

/// Neighbors of `i` that share at least one flow membership with it.
std::vector<AgentId> flow_neighbors(const EdgeSet& es, const Membership& membership,
                                    AgentId i);

}  // namespace relaynet
