// SPDX-License-Identifier: MIT
//
// Physical Control Plane: the fast local layer.  Each tick every mobile agent
// composes a control input from (a) an exogenous waypoint term when it has
// somewhere to be, (b) a dispersive coordination term when it is swarming in
// place, and (c) potential-field terms that hold proximity links together and
// keep agents from colliding.  The composed control is saturated to vmax and
// integrated with explicit Euler.
#pragma once

#include <vector>

#include "relaynet/geometry.hpp"
#include "relaynet/types.hpp"
#include "relaynet/world.hpp"

namespace relaynet {

/// Neighbor partition for the potential terms.  `attract` holds neighbors in
/// the discernment annulus whose link must be retained; `repel` holds
/// neighbors whose link must be denied (always empty here: every link
/// addition is permitted, so none needs denying); `collide` holds every agent
/// inside the collision radius, proximity edges or not.
struct NeighborClass {
    std::vector<AgentId> attract;
    std::vector<AgentId> repel;
    std::vector<AgentId> collide;
};

/// Classify agent i's surroundings.  A neighbor j in the annulus
/// rho1 < d <= rho2 is attracting iff the retention predicate holds:
/// (i or j is SWARMING) and (they share a flow membership, or either is a
/// bridge).  Statics count as perpetually SWARMING.
NeighborClass classify_neighbors(const WorldState& w, AgentId i);

/// Gradient (w.r.t. x_i) of the link-retention potential 1/(rho2^2 - d^2):
/// 2*x_ij/(rho2^2 - d^2)^2, blowing up as d approaches the interaction
/// radius.  Domain: rho1 <= |x_ij| < rho2; DomainError outside.
Vec2 attract_gradient(const Vec2& x_ij, const Params& p);

/// Gradient of the link-denial potential 1/(d^2 - rho1^2), blowing up as d
/// approaches the connection radius from above.  Domain: rho1 < |x_ij| <
/// rho2; DomainError outside.  Unused by the shipped control law (the repel
/// set is always empty) but kept as part of the potential family.
Vec2 repel_gradient(const Vec2& x_ij, const Params& p);

/// Gradient of the collision potential 1/d^2: -2*x_ij/d^4.  Domain:
/// 0 < |x_ij| < rho0; coincident agents are a SingularConfigError, other
/// violations DomainError.
Vec2 collision_gradient(const Vec2& x_ij, const Params& p);

/// Velocity-damped waypoint seeking: unit vector toward x_w minus the current
/// velocity; exactly at the waypoint the direction term is zero and the
/// controller purely damps.
Vec2 waypoint_control(const Vec2& x, const Vec2& x_w, const Vec2& v);

/// Saturated projection of a point onto a flow's endpoint segment.
struct Projection {
    double tau = 0.0;   // normalized coordinate along the segment
    Vec2 point;         // projection target, biased off the endpoints
    bool on_path = false;  // within eps_f of the projection target
};

/// Project x_i onto the segment of `flow`.  tau = <x_i - x_s, x_d - x_s> /
/// |x_d - x_s|^2; inside (0,1) the point is the orthogonal projection, while
/// saturated overshoots return the near endpoint nudged inward by
/// alpha*tau*(x_d - x_s) so the target never sits exactly on an endpoint.
/// Throws DegenerateFlowError when the endpoints coincide.
Projection project_to_flow(const Vec2& x_i, const Flow& flow, const std::vector<Vec2>& pos,
                           const Params& p);

/// Dispersive coordination control for a SWARMING agent: inverse-square
/// repulsion 2*x_ij/d^4 summed over proximity neighbors that share a flow
/// membership and are themselves holding position (static, or SWARMING and
/// on-path for a shared flow).  Throws SingularConfigError on a coincident
/// eligible neighbor.
Vec2 dispersion_control(const WorldState& w, AgentId i);

/// Composed per-agent control, split for diagnostics: u = u_e + u_o + u_pot
/// after saturation of the sum to vmax.
struct ControlInput {
    Vec2 u;      // saturated total
    Vec2 u_e;    // exogenous waypoint term
    Vec2 u_o;    // dispersive coordination term
    Vec2 u_pot;  // net potential-field term (retention + collision)
};

/// One control-plane tick over all mobile agents, in three phases against a
/// single position snapshot:
///   1. state transitions -- a pending command points the agent at the target
///      flow's midpoint and switches it to RECONFIGURE; a SWARMING member off
///      every one of its flows' paths targets the nearest projection point
///      and switches to RECONFIGURE (agents already reconfiguring keep their
///      waypoint);
///   2. control composition from the fresh states;
///   3. arrival -- a RECONFIGURE agent within eps_w of its waypoint becomes
///      SWARMING for the next tick, clearing waypoint and pending command.
/// Mutates behavior/waypoint/command in place; returns controls indexed by
/// AgentId (statics zero).
std::vector<ControlInput> pcp_step(WorldState& w);

/// Explicit Euler step: x += dt * u for mobiles, recorded velocity = u,
/// statics untouched.  Throws SimError on a non-finite control.
void integrate(WorldState& w, const std::vector<ControlInput>& controls);

}  // namespace relaynet
