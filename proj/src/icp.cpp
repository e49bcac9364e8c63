// SPDX-License-Identifier: MIT
#include "relaynet/icp.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <string>

#include "relaynet/errors.hpp"
#include "relaynet/link_model.hpp"

namespace relaynet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPathTieRel = 1e-9;  // relative slack for equal-cost path ties

double edge_cost(const std::vector<Vec2>& pos, AgentId i, AgentId j, const Params& p) {
    return link_weight(distance(pos[static_cast<std::size_t>(i)],
                                pos[static_cast<std::size_t>(j)]),
                       p);
}

// Cost-to-destination table via Dijkstra from dst.
std::vector<double> dist_to(const EdgeSet& es, const std::vector<Vec2>& pos, AgentId dst,
                            const Params& p) {
    std::vector<double> dist(static_cast<std::size_t>(es.num_agents) + 1, kInf);
    dist[static_cast<std::size_t>(dst)] = 0.0;
    using Item = std::pair<double, AgentId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    heap.push({0.0, dst});
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[static_cast<std::size_t>(u)]) continue;  // stale entry
        for (AgentId v : neighbors(es, u)) {
            const double nd = d + edge_cost(pos, u, v, p);
            if (nd < dist[static_cast<std::size_t>(v)]) {
                dist[static_cast<std::size_t>(v)] = nd;
                heap.push({nd, v});
            }
        }
    }
    return dist;
}

std::vector<AgentId> sorted_members(const Membership& membership, int num_agents, FlowId k) {
    std::vector<AgentId> out;
    for (AgentId i = 1; i <= num_agents; ++i) {
        if (static_cast<std::size_t>(i) < membership.size() && membership[static_cast<std::size_t>(i)].count(k))
            out.push_back(i);
    }
    return out;
}

}  // namespace

std::vector<AgentId> min_cost_path(const EdgeSet& es, const std::vector<Vec2>& pos,
                                   AgentId src, AgentId dst, const Params& p) {
    if (src < 1 || src > es.num_agents || dst < 1 || dst > es.num_agents)
        throw DataError("min_cost_path: endpoint id out of range");
    if (src == dst) return {src};
    const auto dist = dist_to(es, pos, dst, p);
    if (!(dist[static_cast<std::size_t>(src)] < kInf))
        throw ConnectivityFault("min_cost_path: agent " + std::to_string(dst) +
                                " unreachable from agent " + std::to_string(src));

    // Greedy reconstruction: repeatedly step to the lowest-id neighbor that
    // still lies on a minimum-cost path.  The strict-decrease requirement on
    // the cost-to-go rules out cycles even when the tie tolerance is loose.
    std::vector<AgentId> path{src};
    AgentId u = src;
    for (int guard = 0; u != dst; ++guard) {
        if (guard > es.num_agents)
            throw SimError("min_cost_path: reconstruction failed to make progress");
        const double here = dist[static_cast<std::size_t>(u)];
        AgentId next = 0;
        for (AgentId v : neighbors(es, u)) {
            const double through = edge_cost(pos, u, v, p) + dist[static_cast<std::size_t>(v)];
            if (through <= here * (1.0 + kPathTieRel) &&
                dist[static_cast<std::size_t>(v)] < here) {
                next = v;
                break;  // neighbors are ascending: first hit is the lowest id
            }
        }
        if (next == 0)
            throw SimError("min_cost_path: no admissible step during reconstruction");
        path.push_back(next);
        u = next;
    }
    return path;
}

Membership compute_membership(const EdgeSet& es, const std::vector<Vec2>& pos,
                              const std::vector<Flow>& flows, int num_agents,
                              const Params& p) {
    Membership membership(static_cast<std::size_t>(num_agents) + 1);
    std::vector<const Flow*> active;
    for (const auto& f : flows)
        if (f.active) active.push_back(&f);
    std::sort(active.begin(), active.end(),
              [](const Flow* l, const Flow* r) { return l->id < r->id; });
    for (const Flow* f : active) {
        for (AgentId v : min_cost_path(es, pos, f->source, f->destination, p))
            membership[static_cast<std::size_t>(v)].insert(f->id);
    }
    return membership;
}

bool Supergraph::has_vertex(int v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

std::vector<int> Supergraph::neighbors(int v) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges) {
        if (a == v) out.push_back(b);
        else if (b == v) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Supergraph build_supergraph(const EdgeSet& es, const Membership& membership,
                            const std::vector<Flow>& flows) {
    Supergraph sg;
    sg.agent_limit = es.num_agents;

    std::set<FlowId> flow_vertices;
    for (const auto& f : flows) {
        if (!f.active) continue;
        if (f.id <= es.num_agents)
            throw DataError("build_supergraph: flow id collides with agent id space");
        flow_vertices.insert(f.id);
    }

    const auto member = [&](AgentId i) {
        return static_cast<std::size_t>(i) < membership.size() &&
               !membership[static_cast<std::size_t>(i)].empty();
    };
    std::vector<int> degree(static_cast<std::size_t>(es.num_agents) + 1, 0);
    for (const auto& [a, b] : es.edges) {
        ++degree[static_cast<std::size_t>(a)];
        ++degree[static_cast<std::size_t>(b)];
    }
    const auto agent_vertex = [&](AgentId i) { return !member(i) && degree[static_cast<std::size_t>(i)] >= 2; };

    for (AgentId i = 1; i <= es.num_agents; ++i)
        if (agent_vertex(i)) sg.vertices.push_back(i);
    sg.vertices.insert(sg.vertices.end(), flow_vertices.begin(), flow_vertices.end());
    std::sort(sg.vertices.begin(), sg.vertices.end());

    const auto add = [&](int u, int v) {
        if (u != v) sg.edges.insert({std::min(u, v), std::max(u, v)});
    };
    for (const auto& [i, j] : es.edges) {
        const bool mi = member(i), mj = member(j);
        if (!mi && !mj) {
            if (agent_vertex(i) && agent_vertex(j)) add(i, j);
        } else if (mi != mj) {
            const AgentId outsider = mi ? j : i;
            const AgentId insider = mi ? i : j;
            if (!agent_vertex(outsider)) continue;
            for (FlowId k : membership[static_cast<std::size_t>(insider)])
                if (flow_vertices.count(k)) add(outsider, k);
        } else {
            // Adjacent members of distinct flows: contracting each flow's
            // member set to one vertex makes their flows adjacent.
            for (FlowId ki : membership[static_cast<std::size_t>(i)])
                for (FlowId kj : membership[static_cast<std::size_t>(j)])
                    if (ki != kj && flow_vertices.count(ki) && flow_vertices.count(kj))
                        add(ki, kj);
        }
    }
    // An agent serving several flows joins all of them pairwise.
    for (AgentId i = 1; i <= es.num_agents; ++i) {
        if (static_cast<std::size_t>(i) >= membership.size()) break;
        const auto& m = membership[static_cast<std::size_t>(i)];
        if (m.size() < 2) continue;
        for (auto it = m.begin(); it != m.end(); ++it)
            for (auto jt = std::next(it); jt != m.end(); ++jt)
                if (flow_vertices.count(*it) && flow_vertices.count(*jt)) add(*it, *jt);
    }
    return sg;
}

std::set<AgentId> detect_bridges(const Supergraph& sg, const std::vector<Flow>& flows) {
    std::vector<FlowId> active;
    for (const auto& f : flows)
        if (f.active) active.push_back(f.id);
    std::sort(active.begin(), active.end());

    std::set<AgentId> bridges;
    for (std::size_t a = 0; a < active.size(); ++a) {
        for (std::size_t b = a + 1; b < active.size(); ++b) {
            const int from = active[a], to = active[b];
            // Hop distances to `to` for lexicographic path reconstruction.
            std::map<int, int> dist{{to, 0}};
            std::queue<int> frontier;
            frontier.push(to);
            while (!frontier.empty()) {
                const int u = frontier.front();
                frontier.pop();
                for (int v : sg.neighbors(u)) {
                    if (!dist.count(v)) {
                        dist[v] = dist[u] + 1;
                        frontier.push(v);
                    }
                }
            }
            if (!dist.count(from))
                throw ConnectivityFault("detect_bridges: flows " + std::to_string(from) +
                                        " and " + std::to_string(to) +
                                        " are not connected in the supergraph");
            int u = from;
            while (u != to) {
                int next = 0;
                bool found = false;
                for (int v : sg.neighbors(u)) {  // ascending: first hit wins
                    auto it = dist.find(v);
                    if (it != dist.end() && it->second == dist[u] - 1) {
                        next = v;
                        found = true;
                        break;
                    }
                }
                if (!found) throw SimError("detect_bridges: broken distance table");
                if (sg.is_agent(next)) bridges.insert(next);
                u = next;
            }
        }
    }
    return bridges;
}

std::vector<AgentId> connected_core(const EdgeSet& es, const Membership& membership,
                                    const std::set<AgentId>& bridges) {
    std::set<AgentId> core(bridges.begin(), bridges.end());
    for (AgentId i = 1; i <= es.num_agents; ++i) {
        if (static_cast<std::size_t>(i) < membership.size() &&
            !membership[static_cast<std::size_t>(i)].empty())
            core.insert(i);
    }
    std::vector<AgentId> out(core.begin(), core.end());
    if (out.empty()) return out;  // no active flows: nothing to keep connected
    if (!is_connected(es, out))
        throw ConnectivityFault("connected_core: induced subgraph is disconnected");
    return out;
}

std::optional<DetachChoice> best_detachment(const EdgeSet& es, const std::vector<Vec2>& pos,
                                            const Membership& membership,
                                            const std::set<AgentId>& bridges,
                                            const std::vector<Flow>& flows,
                                            int mobile_count, const Params& p) {
    std::vector<FlowId> active;
    for (const auto& f : flows)
        if (f.active) active.push_back(f.id);
    std::sort(active.begin(), active.end());
    if (active.empty()) return std::nullopt;

    std::map<FlowId, std::vector<AgentId>> members;
    for (FlowId k : active) members[k] = sorted_members(membership, es.num_agents, k);

    std::optional<DetachChoice> best;
    for (AgentId i = 1; i <= mobile_count; ++i) {
        if (!membership[static_cast<std::size_t>(i)].empty() || bridges.count(i)) continue;

        // Provisional flow: the one this agent currently contributes most to,
        // counting reciprocal link weights to members inside the interaction
        // radius.  First strict maximum wins, so ties take the lowest flow id.
        FlowId prov = active.front();
        double prov_util = -1.0;
        for (FlowId k : active) {
            double util = 0.0;
            for (AgentId j : members[k]) {
                const double d = distance(pos[static_cast<std::size_t>(i)], pos[static_cast<std::size_t>(j)]);
                if (d <= p.rho2) util += 1.0 / link_weight(d, p);
            }
            if (util > prov_util) {
                prov_util = util;
                prov = k;
            }
        }

        double score = 0.0;
        for (AgentId j : neighbors(es, i)) {
            if (membership[static_cast<std::size_t>(j)].count(prov))
                score += edge_cost(pos, i, j, p);
        }
        if (!best || score < best->score) best = DetachChoice{i, prov, score};
    }
    return best;
}

AttachChoice best_attachment(const std::vector<Vec2>& pos, const Membership& membership,
                             const std::vector<Flow>& flows, const Params& p) {
    std::vector<const Flow*> active;
    for (const auto& f : flows)
        if (f.active) active.push_back(&f);
    std::sort(active.begin(), active.end(),
              [](const Flow* l, const Flow* r) { return l->id < r->id; });
    if (active.empty()) throw DataError("best_attachment: no active flows");

    const int num_agents = static_cast<int>(membership.size()) - 1;
    AttachChoice best{0, -1.0};
    for (const Flow* f : active) {
        const Vec2 mid = 0.5 * (pos[static_cast<std::size_t>(f->source)] +
                                pos[static_cast<std::size_t>(f->destination)]);
        const auto members = sorted_members(membership, num_agents, f->id);
        double sum = 0.0;
        for (AgentId j : members)
            sum += 1.0 / std::max(distance(pos[static_cast<std::size_t>(j)], mid), p.eps_f);
        const double a = (static_cast<double>(members.size()) + 1.0) * sum;
        if (a > best.score) best = AttachChoice{f->id, a};
    }
    return best;
}

std::optional<IcpCommand> icp_step(WorldState& w) {
    w.membership = compute_membership(w.edges, w.pos, w.flows, w.agent_count(), w.params);
    const Supergraph sg = build_supergraph(w.edges, w.membership, w.flows);
    w.bridges = detect_bridges(sg, w.flows);
    connected_core(w.edges, w.membership, w.bridges);

    if (w.active_flows().empty()) return std::nullopt;
    const auto det = best_detachment(w.edges, w.pos, w.membership, w.bridges, w.flows,
                                     w.mobile_count, w.params);
    if (!det) return std::nullopt;
    const auto att = best_attachment(w.pos, w.membership, w.flows, w.params);
    if (att.score > w.params.beta * det->score) {
        const IcpCommand cmd{w.tick, det->agent, att.flow};
        w.command[static_cast<std::size_t>(det->agent)] = att.flow;
        return cmd;
    }
    return std::nullopt;
}

}  // namespace relaynet
