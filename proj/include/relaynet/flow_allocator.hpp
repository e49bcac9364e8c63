// SPDX-License-Identifier: MIT
//
// Relay allocation across information flows.
//
// Each flow k with endpoint separation L_k, staffed by m relays placed at the
// ideal equidistant points, has aggregate traversal cost
//
//     W_k(m) = (m + 1) * link_weight(L_k / (m + 1))
//
// which is discretely convex in m: splitting hops more finely has diminishing
// returns, and past the optimum each extra relay adds more overhead than it
// saves.  Convexity is what lets a local-search allocator (single relay
// migrations between flows) reach the global optimum.
#pragma once

#include <vector>

#include "relaynet/geometry.hpp"
#include "relaynet/types.hpp"

namespace relaynet {

/// One flow's demand as seen by the allocator: its id (used for deterministic
/// tie-breaking) and the straight-line separation of its endpoints.
struct FlowDemand {
    FlowId id;
    double length;
};

/// Ideal relay positions for a flow from `src` to `dst` staffed by `m` relays:
/// the m interior points splitting the segment into m + 1 equal hops, ordered
/// from source to destination.  Throws DegenerateFlowError when the endpoints
/// coincide (the segment has no direction to place relays along) and
/// DomainError when m < 0.
std::vector<Vec2> equidistant_positions(const Vec2& src, const Vec2& dst, int m);

/// W_k(m) for a flow of endpoint separation `length` staffed by `relays`
/// relays at the ideal equidistant positions.  Throws DomainError when
/// length <= 0 or relays < 0.
double ideal_flow_cost(double length, int relays, const Params& p);

/// Total ideal cost of an allocation, summed in ascending flow id order so
/// that equal allocations always produce bitwise-equal costs regardless of
/// input ordering.  `alloc` must be aligned with `flows`.
double allocation_cost(const std::vector<FlowDemand>& flows, const std::vector<int>& alloc,
                       const Params& p);

/// Distribute `total` relays across `flows` minimizing the summed ideal cost.
///
/// Starts from a round-robin deal (one relay at a time, ascending flow id) and
/// then migrates single relays between flows: each step picks the
/// donor/recipient pair whose combined cost delta is most negative and applies
/// it, stopping when no migration strictly improves.  Discrete convexity of
/// W_k makes this local search globally optimal.  Ties prefer the lowest donor
/// flow id, then the lowest recipient flow id.
///
/// Returns the allocation aligned with `flows`.  Throws DomainError on
/// negative totals or non-positive lengths, DataError on duplicate flow ids or
/// when relays are supplied with no flow to hold them.
std::vector<int> greedy_allocate(const std::vector<FlowDemand>& flows, int total,
                                 const Params& p);

/// Exhaustive reference allocator: enumerates every composition of `total`
/// into |flows| non-negative parts in lexicographic order (aligned to
/// ascending flow id) and returns the first one attaining the minimal cost.
/// Intended as a test oracle; throws CapacityError when total > 12 or
/// |flows| > 5, where enumeration stops being cheap.
std::vector<int> brute_force_allocate(const std::vector<FlowDemand>& flows, int total,
                                      const Params& p);

}  // namespace relaynet
