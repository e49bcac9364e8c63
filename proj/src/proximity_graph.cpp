// SPDX-License-Identifier: MIT
#include "relaynet/proximity_graph.hpp"

#include <algorithm>
#include <queue>

#include "relaynet/errors.hpp"
#include "relaynet/kernels.hpp"

namespace relaynet {

namespace {

void check_agent(const EdgeSet& es, AgentId i, const char* who) {
    if (i < 1 || i > es.num_agents)
        throw DataError(std::string(who) + ": agent id out of range");
}

// Squared distances from agent i to every agent, via the active kernel lane.
// Positions are repacked once per call; n is small enough that this is noise.
std::vector<double> sq_dist_from(const std::vector<Vec2>& pos, int n, AgentId i) {
    std::vector<double> xs(n), ys(n), out(n);
    for (int k = 1; k <= n; ++k) {
        xs[k - 1] = pos[k].x;
        ys[k - 1] = pos[k].y;
    }
    kernels::active().sq_dist_row(xs.data(), ys.data(), pos[i].x, pos[i].y, out.data(),
                                  static_cast<std::size_t>(n));
    return out;
}

}  // namespace

EdgeSet initial_edges(const std::vector<Vec2>& pos, int num_agents, const Params& p) {
    EdgeSet es;
    es.num_agents = num_agents;
    const double r1sq = p.rho1 * p.rho1;
    for (AgentId i = 1; i <= num_agents; ++i) {
        const auto d2 = sq_dist_from(pos, num_agents, i);
        for (AgentId j = i + 1; j <= num_agents; ++j) {
            if (d2[j - 1] <= r1sq) {
                es.edges.insert({i, j});
                es.established[{i, j}] = 0;
            }
        }
    }
    return es;
}

EdgeSet update_edges(const EdgeSet& prev, const std::vector<Vec2>& pos, Tick tick,
                     const Params& p, const RetainPredicate* retain) {
    if (static_cast<int>(pos.size()) < prev.num_agents + 1)
        throw DataError("update_edges: positions missing for some agents");
    EdgeSet next;
    next.num_agents = prev.num_agents;
    const double r1sq = p.rho1 * p.rho1;
    const double r2sq = p.rho2 * p.rho2;
    for (AgentId i = 1; i <= prev.num_agents; ++i) {
        const auto d2 = sq_dist_from(pos, prev.num_agents, i);
        for (AgentId j = i + 1; j <= prev.num_agents; ++j) {
            const Edge e{i, j};
            const bool had = prev.edges.count(e) > 0;
            bool has;
            if (d2[j - 1] <= r1sq)
                has = true;  // inside connection radius: link (re)forms
            else if (d2[j - 1] > r2sq)
                has = false;  // beyond interaction radius: link is lost
            else
                has = had;  // hysteresis band: carry the previous state
            if (has) {
                next.edges.insert(e);
                auto it = prev.established.find(e);
                next.established[e] = had && it != prev.established.end() ? it->second : tick;
            } else if (had && retain != nullptr && (*retain)(i, j)) {
                next.dropped_retained.push_back(e);
            }
        }
    }
    return next;
}

std::vector<AgentId> neighbors(const EdgeSet& es, AgentId i) {
    check_agent(es, i, "neighbors");
    std::vector<AgentId> out;
    for (const auto& [a, b] : es.edges) {
        if (a == i) out.push_back(b);
        else if (b == i) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_connected(const EdgeSet& es, const std::vector<AgentId>& vertices) {
    if (vertices.empty()) throw DataError("is_connected: empty vertex set");
    std::set<AgentId> want(vertices.begin(), vertices.end());
    for (AgentId v : want) check_agent(es, v, "is_connected");
    std::set<AgentId> seen{*want.begin()};
    std::queue<AgentId> frontier;
    frontier.push(*want.begin());
    while (!frontier.empty()) {
        const AgentId u = frontier.front();
        frontier.pop();
        for (AgentId v : neighbors(es, u)) {
            if (want.count(v) && !seen.count(v)) {
                seen.insert(v);
                frontier.push(v);
            }
        }
    }
    return seen.size() == want.size();
}

FlowSubgraph flow_subgraph(const EdgeSet& es, const Membership& membership, FlowId k) {
    FlowSubgraph sub;
    for (AgentId i = 1; i <= es.num_agents; ++i) {
        if (static_cast<std::size_t>(i) < membership.size() && membership[i].count(k))
            sub.vertices.push_back(i);
    }
    for (const auto& e : es.edges) {
        if (static_cast<std::size_t>(e.first) < membership.size() &&
            static_cast<std::size_t>(e.second) < membership.size() &&
            membership[e.first].count(k) && membership[e.second].count(k))
            sub.edges.push_back(e);
    }
    return sub;
}

std::vector<AgentId> flow_neighbors(const EdgeSet& es, const Membership& membership,
                                    AgentId i) {
    check_agent(es, i, "flow_neighbors");
    if (static_cast<std::size_t>(i) >= membership.size())
        throw DataError("flow_neighbors: membership missing for agent");
    std::vector<AgentId> out;
    for (AgentId j : neighbors(es, i)) {
        const auto& mi = membership[i];
        const auto& mj = membership[j];
        const bool shared =
            std::any_of(mi.begin(), mi.end(), [&](FlowId f) { return mj.count(f) > 0; });
        if (shared) out.push_back(j);
    }
    return out;
}

}  // namespace relaynet
