// SPDX-License-Identifier: MIT
//
// Developer probe: replays a scenario with the same loop the simulator uses
// and prints the control-plane internals at every invocation -- memberships,
// bridges, detachment pool with scores, attachment scores, and the gate
// decision.  Optionally dumps mobile positions every N ticks.  Not installed;
// exists to make scenario tuning observable.
//
//   icp_probe SCENARIO [--positions N] [--from T0] [--to T1]
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "relaynet/errors.hpp"
#include "relaynet/icp.hpp"
#include "relaynet/link_model.hpp"
#include "relaynet/pcp.hpp"
#include "relaynet/scenario.hpp"
#include "relaynet/world.hpp"

using namespace relaynet;

namespace {

std::string agent_list(const std::vector<AgentId>& v) {
    std::string s;
    for (AgentId a : v) s += (s.empty() ? "" : ",") + std::to_string(a);
    return s.empty() ? "-" : s;
}

void print_icp_state(const WorldState& w) {
    for (FlowId k : w.active_flows()) {
        std::vector<AgentId> mem;
        for (AgentId i = 1; i <= w.agent_count(); ++i)
            if (w.membership[static_cast<std::size_t>(i)].count(k)) mem.push_back(i);
        const Flow* f = w.find_flow(k);
        const auto sub = flow_subgraph(w.edges, w.membership, k);
        const double cost = flow_cost(sub.edges, w.pos, w.params);
        std::printf("  flow %d (src %d dst %d): members [%s] cost %.4f\n", k, f->source,
                    f->destination, agent_list(mem).c_str(), cost);
    }
    std::vector<AgentId> br(w.bridges.begin(), w.bridges.end());
    std::printf("  bridges: [%s]\n", agent_list(br).c_str());

    // Pool = mobile, memberless, not a bridge; report each agent's provisional
    // flow and detachment score the way the controller computes them.
    const auto active = w.active_flows();
    for (AgentId i = 1; i <= w.mobile_count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if (!w.membership[idx].empty() || w.bridges.count(i)) continue;
        FlowId prov = active.empty() ? 0 : active.front();
        double prov_util = -1.0;
        for (FlowId k : active) {
            double util = 0.0;
            for (AgentId j = 1; j <= w.agent_count(); ++j) {
                if (!w.membership[static_cast<std::size_t>(j)].count(k)) continue;
                const double d = distance(w.pos[idx], w.pos[static_cast<std::size_t>(j)]);
                if (d <= w.params.rho2) util += 1.0 / link_weight(d, w.params);
            }
            if (util > prov_util) {
                prov_util = util;
                prov = k;
            }
        }
        double score = 0.0;
        for (AgentId j : neighbors(w.edges, i))
            if (w.membership[static_cast<std::size_t>(j)].count(prov))
                score += link_weight(distance(w.pos[idx], w.pos[static_cast<std::size_t>(j)]),
                                     w.params);
        std::printf("  pool %d: prov %d score %.4f (beta*score %.4f)\n", i, prov, score,
                    w.params.beta * score);
    }
    for (FlowId k : active) {
        std::vector<AgentId> mem;
        for (AgentId i = 1; i <= w.agent_count(); ++i)
            if (w.membership[static_cast<std::size_t>(i)].count(k)) mem.push_back(i);
        const Flow* f = w.find_flow(k);
        const Vec2 mid = 0.5 * (w.pos[static_cast<std::size_t>(f->source)] +
                                w.pos[static_cast<std::size_t>(f->destination)]);
        double sum = 0.0;
        for (AgentId j : mem)
            sum += 1.0 / std::max(distance(w.pos[static_cast<std::size_t>(j)], mid),
                                  w.params.eps_f);
        std::printf("  attach %d: score %.4f (members %zu)\n", k,
                    (static_cast<double>(mem.size()) + 1.0) * sum, mem.size());
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: icp_probe SCENARIO [--positions N] [--from T0] [--to T1]\n");
        return 2;
    }
    int pos_every = 0;
    long long from = 0, to = -1;
    for (int i = 2; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--positions") && i + 1 < argc)
            pos_every = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--from") && i + 1 < argc)
            from = std::atoll(argv[++i]);
        else if (!std::strcmp(argv[i], "--to") && i + 1 < argc)
            to = std::atoll(argv[++i]);
    }

    Scenario sc;
    try {
        sc = load_scenario(argv[1]);
    } catch (const DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    if (to < 0) to = sc.max_ticks;

    WorldState w = make_world(sc);
    for (Tick t = 0; t <= sc.max_ticks; ++t) {
        w.tick = t;
        bool event_fired = false;
        for (const auto& ev : sc.events) {
            if (ev.tick != t) continue;
            for (auto& f : w.flows)
                if (f.id == ev.flow) f.active = ev.activate;
            event_fired = true;
            std::printf("== tick %lld: event flow %d -> %s\n", static_cast<long long>(t),
                        ev.flow, ev.activate ? "active" : "inactive");
        }
        const bool icp_due = event_fired || (t % w.params.icp_period == 0);
        if (icp_due) {
            auto cmd = icp_step(w);
            if (t >= from && t <= to) {
                std::printf("== tick %lld (icp)\n", static_cast<long long>(t));
                print_icp_state(w);
                if (cmd)
                    std::printf("  COMMAND: agent %d -> flow %d\n", cmd->agent, cmd->flow);
            }
        }
        const auto controls = pcp_step(w);
        integrate(w, controls);
        w.edges = update_edges(w.edges, w.pos, t, w.params);
        if (pos_every > 0 && t % pos_every == 0 && t >= from && t <= to) {
            std::printf("-- tick %lld positions:", static_cast<long long>(t));
            for (AgentId i = 1; i <= w.mobile_count; ++i) {
                const auto idx = static_cast<std::size_t>(i);
                const char* b =
                    w.behavior[idx] == BehaviorState::kReconfigure ? "R" : "S";
                std::printf(" %d%s(%.2f,%.2f)", i, b, w.pos[idx].x, w.pos[idx].y);
            }
            std::printf("\n");
        }
    }
    return 0;
}
