// SPDX-License-Identifier: MIT
#include "relaynet/sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "relaynet/errors.hpp"
#include "relaynet/icp.hpp"
#include "relaynet/link_model.hpp"
#include "relaynet/pcp.hpp"
#include "relaynet/scenario.hpp"

namespace relaynet {

namespace {

// Max relative deviation of consecutive member spacings from the equidistant
// ideal, with members ordered by their coordinate along the flow segment.
double spacing_error(const WorldState& w, const Flow& f) {
    std::vector<AgentId> members;
    for (AgentId i = 1; i <= w.agent_count(); ++i)
        if (w.membership[static_cast<std::size_t>(i)].count(f.id)) members.push_back(i);
    if (members.size() < 2) return 0.0;

    const Vec2 xs = w.pos[static_cast<std::size_t>(f.source)];
    const Vec2 span = w.pos[static_cast<std::size_t>(f.destination)] - xs;
    const double len2 = span.norm_sq();
    if (len2 == 0.0) return 0.0;
    std::vector<std::pair<double, AgentId>> order;
    for (AgentId i : members)
        order.push_back({(w.pos[static_cast<std::size_t>(i)] - xs).dot(span) / len2, i});
    std::sort(order.begin(), order.end());

    const double ideal = std::sqrt(len2) / (static_cast<double>(members.size()) - 1.0);
    double worst = 0.0;
    for (std::size_t k = 1; k < order.size(); ++k) {
        const double s = distance(w.pos[static_cast<std::size_t>(order[k].second)],
                                  w.pos[static_cast<std::size_t>(order[k - 1].second)]);
        worst = std::max(worst, std::abs(s - ideal) / ideal);
    }
    return worst;
}

TickRecord record_tick(const WorldState& w, bool icp_ran,
                       const std::vector<IcpCommand>& commands) {
    TickRecord rec;
    rec.tick = w.tick;
    std::vector<AgentId> all(static_cast<std::size_t>(w.agent_count()));
    for (int i = 1; i <= w.agent_count(); ++i) all[static_cast<std::size_t>(i) - 1] = i;
    rec.connected = is_connected(w.edges, all);
    rec.icp_ran = icp_ran;
    for (AgentId i = 1; i <= w.mobile_count; ++i)
        if (w.behavior[static_cast<std::size_t>(i)] == BehaviorState::kReconfigure)
            ++rec.reconfigure_count;
    std::vector<const Flow*> flows;
    for (const auto& f : w.flows) flows.push_back(&f);
    std::sort(flows.begin(), flows.end(),
              [](const Flow* l, const Flow* r) { return l->id < r->id; });
    for (const Flow* f : flows) {
        FlowTickRecord fr;
        fr.flow = f->id;
        fr.active = f->active;
        for (int i = 1; i <= w.agent_count(); ++i)
            if (w.membership[static_cast<std::size_t>(i)].count(f->id)) ++fr.members;
        if (f->active) {
            const auto sub = flow_subgraph(w.edges, w.membership, f->id);
            fr.cost = flow_cost(sub.edges, w.pos, w.params);
            fr.spacing_err = spacing_error(w, *f);
        }
        rec.flows.push_back(fr);
    }
    rec.commands = commands;
    rec.positions = w.pos;
    return rec;
}

}  // namespace

Trace run(const Scenario& sc) {
    const auto violations = validate_scenario(sc);
    if (!violations.empty()) {
        std::string msg = "run: scenario failed validation:";
        for (const auto& v : violations) msg += "\n  - " + v;
        throw DataError(msg);
    }

    WorldState w = make_world(sc);
    Trace tr;
    tr.scenario = sc;
    tr.records.reserve(static_cast<std::size_t>(sc.max_ticks) + 1);

    for (Tick t = 0; t <= sc.max_ticks; ++t) {
        w.tick = t;
        try {
            bool event_fired = false;
            for (const auto& ev : sc.events) {
                if (ev.tick != t) continue;
                for (auto& f : w.flows)
                    if (f.id == ev.flow) f.active = ev.activate;
                event_fired = true;
            }
            const bool icp_due = event_fired || (t % w.params.icp_period == 0);
            std::vector<IcpCommand> commands;
            if (icp_due) {
                if (auto cmd = icp_step(w)) commands.push_back(*cmd);
            }
            const auto controls = pcp_step(w);
            integrate(w, controls);
            w.edges = update_edges(w.edges, w.pos, t, w.params);
            tr.records.push_back(record_tick(w, icp_due, commands));
        } catch (const SimError& e) {
            throw SimError("tick " + std::to_string(t) + ": " + e.what());
        }
    }
    return tr;
}

Summary summarize(const Trace& tr) {
    Summary s;
    if (tr.records.empty()) return s;

    s.final_flows = tr.records.back().flows;
    s.always_connected = true;
    for (const auto& rec : tr.records) {
        if (!rec.connected) s.always_connected = false;
        for (const auto& fr : rec.flows)
            if (fr.active) s.max_spacing_err = std::max(s.max_spacing_err, fr.spacing_err);
        for (const auto& cmd : rec.commands) s.commands.push_back(cmd);
    }
    s.command_count = static_cast<int>(s.commands.size());

    // Phases are delimited by event ticks; a phase converges at the first
    // tick whose trailing 50-tick window (fully inside the phase) moves every
    // active flow's cost by less than 0.1% relative.
    std::set<Tick> starts{0};
    for (const auto& ev : tr.scenario.events) starts.insert(ev.tick);
    std::vector<Tick> boundaries(starts.begin(), starts.end());
    const Tick last = tr.records.back().tick;

    constexpr Tick kWindow = 50;
    constexpr double kRelTol = 1e-3;
    for (std::size_t pi = 0; pi < boundaries.size(); ++pi) {
        PhaseSummary ph;
        ph.start = boundaries[pi];
        ph.end = pi + 1 < boundaries.size() ? boundaries[pi + 1] - 1 : last;
        if (ph.start > last) continue;
        ph.end = std::min(ph.end, last);
        for (Tick t = ph.start + kWindow - 1; t <= ph.end; ++t) {
            bool settled = true;
            for (std::size_t fi = 0; fi < tr.records[static_cast<std::size_t>(t)].flows.size() && settled;
                 ++fi) {
                double lo = 0.0, hi = 0.0;
                bool active_throughout = true, first = true;
                for (Tick u = t - kWindow + 1; u <= t; ++u) {
                    const auto& fr = tr.records[static_cast<std::size_t>(u)].flows[fi];
                    if (!fr.active) {
                        active_throughout = false;
                        break;
                    }
                    lo = first ? fr.cost : std::min(lo, fr.cost);
                    hi = first ? fr.cost : std::max(hi, fr.cost);
                    first = false;
                }
                if (!active_throughout) continue;  // dormant flows don't gate settling
                if (hi > 0.0 && (hi - lo) / hi >= kRelTol) settled = false;
            }
            if (settled) {
                ph.convergence_tick = t;
                break;
            }
        }
        s.phases.push_back(ph);
    }
    return s;
}

}  // namespace relaynet
