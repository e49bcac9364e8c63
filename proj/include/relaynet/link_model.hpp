// SPDX-License-Identifier: MIT
// relaynet: distance-dependent link quality.
//
// A link's packet delivery probability falls off with distance along a
// logistic curve with steepness `a` and midpoint `b`; the expected number of
// transmissions per delivered packet is its reciprocal. Flow cost sums that
// expectation over a set of links, so lower is better and each extra hop
// costs at least 1.
#pragma once

#include <utility>
#include <vector>

#include "relaynet/geometry.hpp"
#include "relaynet/types.hpp"

namespace relaynet {

/// Probability that a packet sent over a link of length `d` is received.
/// Strictly decreasing in d; 0.5 at d == b. Throws DomainError for d < 0.
double reception_rate(double d, const Params& p);

/// Expected transmissions per delivered packet over a link of length `d`:
/// 1 + exp(a*(d-b)), clamped to kernels::kMaxLinkWeight where the exponential
/// overflows. Equals 1/reception_rate up to rounding on the unclamped range.
/// Throws DomainError for d < 0.
double link_weight(double d, const Params& p);

/// Batched link_weight over raw distances (same semantics per element).
void link_weight_batch(const double* d, double* out, std::size_t n, const Params& p);

/// Total expected transmissions across `edges`, with distances taken from
/// `pos` (indexed by agent id, index 0 unused). Empty edge set costs 0.
/// Throws DataError when an endpoint id has no position.
double flow_cost(const std::vector<std::pair<AgentId, AgentId>>& edges,
                 const std::vector<Vec2>& pos, const Params& p);

}  // namespace relaynet
