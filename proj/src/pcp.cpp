// SPDX-License-Identifier: MIT
#include "relaynet/pcp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relaynet/errors.hpp"

namespace relaynet {

namespace {

// Floor for the (rho2^2 - d^2) gap when a retained link sits exactly at the
// interaction radius.  The continuous potential is unbounded there; in
// discrete time the saturation eats any finite stand-in, so the exact value
// only needs to be positive and deterministic.
constexpr double kGapFloor = 1e-12;

Vec2 retention_pull(const Vec2& x_ij, double gap) {
    const double g = gap > kGapFloor ? gap : kGapFloor;
    return (-2.0 / (g * g)) * x_ij;
}

bool swarming(const WorldState& w, AgentId j) {
    // Statics hold no behavior machine; every predicate sees them as SWARMING.
    return w.is_static(j) || w.behavior[static_cast<std::size_t>(j)] == BehaviorState::kSwarming;
}

bool shares_flow(const WorldState& w, AgentId i, AgentId j) {
    const auto& mi = w.membership[static_cast<std::size_t>(i)];
    const auto& mj = w.membership[static_cast<std::size_t>(j)];
    return std::any_of(mi.begin(), mi.end(), [&](FlowId k) { return mj.count(k) > 0; });
}

Vec2 saturate(const Vec2& u, double vmax) {
    const double n = u.norm();
    return n > vmax ? (vmax / n) * u : u;
}

Vec2 flow_midpoint(const WorldState& w, const Flow& f) {
    return 0.5 * (w.pos[static_cast<std::size_t>(f.source)] +
                  w.pos[static_cast<std::size_t>(f.destination)]);
}

}  // namespace

NeighborClass classify_neighbors(const WorldState& w, AgentId i) {
    NeighborClass nc;
    const Vec2 xi = w.pos[static_cast<std::size_t>(i)];
    const bool bi = w.bridges.count(i) > 0;
    for (AgentId j : neighbors(w.edges, i)) {
        const double d = distance(xi, w.pos[static_cast<std::size_t>(j)]);
        if (!(d > w.params.rho1 && d <= w.params.rho2)) continue;
        const bool retain = (swarming(w, i) || swarming(w, j)) &&
                            (shares_flow(w, i, j) || bi || w.bridges.count(j) > 0);
        if (retain) nc.attract.push_back(j);
    }
    for (AgentId j = 1; j <= w.agent_count(); ++j) {
        if (j == i) continue;
        if (distance(xi, w.pos[static_cast<std::size_t>(j)]) <= w.params.rho0)
            nc.collide.push_back(j);
    }
    return nc;
}

Vec2 attract_gradient(const Vec2& x_ij, const Params& p) {
    const double d = x_ij.norm();
    if (!(d >= p.rho1 && d < p.rho2))
        throw DomainError("attract_gradient: distance outside [rho1, rho2)");
    const double gap = p.rho2 * p.rho2 - d * d;
    return (2.0 / (gap * gap)) * x_ij;
}

Vec2 repel_gradient(const Vec2& x_ij, const Params& p) {
    const double d = x_ij.norm();
    if (!(d > p.rho1 && d < p.rho2))
        throw DomainError("repel_gradient: distance outside (rho1, rho2)");
    const double gap = d * d - p.rho1 * p.rho1;
    return (-2.0 / (gap * gap)) * x_ij;
}

Vec2 collision_gradient(const Vec2& x_ij, const Params& p) {
    const double d2 = x_ij.norm_sq();
    if (d2 == 0.0) throw SingularConfigError("collision_gradient: coincident agents");
    if (!(d2 < p.rho0 * p.rho0))
        throw DomainError("collision_gradient: distance outside (0, rho0)");
    return (-2.0 / (d2 * d2)) * x_ij;
}

Vec2 waypoint_control(const Vec2& x, const Vec2& x_w, const Vec2& v) {
    const Vec2 to_w = x_w - x;
    const double d = to_w.norm();
    const Vec2 unit = d > 0.0 ? (1.0 / d) * to_w : Vec2{0.0, 0.0};
    return unit - v;
}

Projection project_to_flow(const Vec2& x_i, const Flow& flow, const std::vector<Vec2>& pos,
                           const Params& p) {
    const Vec2 xs = pos[static_cast<std::size_t>(flow.source)];
    const Vec2 xd = pos[static_cast<std::size_t>(flow.destination)];
    const Vec2 span = xd - xs;
    const double len2 = span.norm_sq();
    if (len2 == 0.0)
        throw DegenerateFlowError("project_to_flow: flow " + std::to_string(flow.id) +
                                  " has coincident endpoints");
    Projection pr;
    pr.tau = (x_i - xs).dot(span) / len2;
    if (pr.tau <= 0.0)
        pr.point = xs - (p.alpha * pr.tau) * span;
    else if (pr.tau >= 1.0)
        pr.point = xd - (p.alpha * pr.tau) * span;
    else
        pr.point = xs + pr.tau * span;
    pr.on_path = distance(pr.point, x_i) <= p.eps_f;
    return pr;
}

Vec2 dispersion_control(const WorldState& w, AgentId i) {
    const Vec2 xi = w.pos[static_cast<std::size_t>(i)];
    Vec2 u{0.0, 0.0};
    for (AgentId j : neighbors(w.edges, i)) {
        if (!shares_flow(w, i, j)) continue;
        bool eligible = w.is_static(j);
        if (!eligible && swarming(w, j)) {
            // Mobile co-members count only while they hold the formation:
            // SWARMING and on-path for some flow both agents serve.
            const auto& mi = w.membership[static_cast<std::size_t>(i)];
            for (FlowId k : mi) {
                if (!w.membership[static_cast<std::size_t>(j)].count(k)) continue;
                const Flow* f = w.find_flow(k);
                if (f != nullptr &&
                    project_to_flow(w.pos[static_cast<std::size_t>(j)], *f, w.pos, w.params).on_path) {
                    eligible = true;
                    break;
                }
            }
        }
        if (!eligible) continue;
        const Vec2 x_ij = xi - w.pos[static_cast<std::size_t>(j)];
        const double d2 = x_ij.norm_sq();
        if (d2 == 0.0)
            throw SingularConfigError("dispersion_control: coincident co-members");
        u += (2.0 / (d2 * d2)) * x_ij;
    }
    return u;
}

std::vector<ControlInput> pcp_step(WorldState& w) {
    const Params& p = w.params;

    // Phase 1: behavior transitions from current facts.  Commands override;
    // otherwise a SWARMING member that slid off every one of its flows' paths
    // starts reconfiguring toward the nearest projection point.  Agents
    // already RECONFIGURE keep their frozen waypoint.
    for (AgentId i = 1; i <= w.mobile_count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if (w.command[idx]) {
            const Flow* f = w.find_flow(*w.command[idx]);
            if (f == nullptr)
                throw DataError("pcp_step: command targets unknown flow");
            w.waypoint[idx] = flow_midpoint(w, *f);
            w.behavior[idx] = BehaviorState::kReconfigure;
            continue;
        }
        if (w.behavior[idx] != BehaviorState::kSwarming || w.membership[idx].empty())
            continue;
        bool aligned = false;
        Vec2 nearest{0.0, 0.0};
        double nearest_d = 0.0;
        bool have_nearest = false;
        for (FlowId k : w.membership[idx]) {  // std::set: ascending flow ids
            const Flow* f = w.find_flow(k);
            if (f == nullptr) continue;
            const Projection pr = project_to_flow(w.pos[idx], *f, w.pos, p);
            if (pr.on_path) {
                aligned = true;
                break;
            }
            const double d = distance(pr.point, w.pos[idx]);
            if (!have_nearest || d < nearest_d) {
                have_nearest = true;
                nearest_d = d;
                nearest = pr.point;
            }
        }
        if (!aligned && have_nearest) {
            w.waypoint[idx] = nearest;
            w.behavior[idx] = BehaviorState::kReconfigure;
        }
    }

    // Phase 2: compose controls against the common position snapshot.
    std::vector<ControlInput> controls(static_cast<std::size_t>(w.agent_count()) + 1);
    for (AgentId i = 1; i <= w.mobile_count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        ControlInput c;
        if (w.behavior[idx] == BehaviorState::kReconfigure && w.waypoint[idx])
            c.u_e = waypoint_control(w.pos[idx], *w.waypoint[idx], w.vel[idx]);
        if (w.behavior[idx] == BehaviorState::kSwarming) c.u_o = dispersion_control(w, i);

        const NeighborClass nc = classify_neighbors(w, i);
        Vec2 pot{0.0, 0.0};
        for (AgentId j : nc.attract) {
            const Vec2 x_ij = w.pos[idx] - w.pos[static_cast<std::size_t>(j)];
            pot += retention_pull(x_ij, p.rho2 * p.rho2 - x_ij.norm_sq());
        }
        for (AgentId j : nc.collide) {
            const Vec2 x_ij = w.pos[idx] - w.pos[static_cast<std::size_t>(j)];
            if (x_ij.norm_sq() == 0.0)
                throw SingularConfigError("pcp_step: coincident agents");
            if (x_ij.norm() < p.rho0) pot -= collision_gradient(x_ij, p);
        }
        c.u_pot = pot;
        c.u = saturate(c.u_e + c.u_o + c.u_pot, p.vmax);
        controls[idx] = c;
    }

    // Phase 3: arrivals take effect next tick.
    for (AgentId i = 1; i <= w.mobile_count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if (w.behavior[idx] == BehaviorState::kReconfigure && w.waypoint[idx] &&
            distance(*w.waypoint[idx], w.pos[idx]) <= p.eps_w) {
            w.behavior[idx] = BehaviorState::kSwarming;
            w.waypoint[idx].reset();
            w.command[idx].reset();
        }
    }
    return controls;
}

void integrate(WorldState& w, const std::vector<ControlInput>& controls) {
    if (controls.size() != static_cast<std::size_t>(w.agent_count()) + 1)
        throw DataError("integrate: control vector not aligned with agents");
    for (AgentId i = 1; i <= w.mobile_count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const Vec2 u = controls[idx].u;
        if (!finite(u)) throw SimError("integrate: non-finite control for agent " + std::to_string(i));
        w.pos[idx] += w.params.dt * u;
        w.vel[idx] = u;
    }
}

}  // namespace relaynet
