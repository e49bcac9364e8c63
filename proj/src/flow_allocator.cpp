// SPDX-License-Identifier: MIT
#include "relaynet/flow_allocator.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "relaynet/errors.hpp"
#include "relaynet/link_model.hpp"

namespace relaynet {

namespace {

// Indices into `flows` sorted by ascending flow id, with input validation
// shared by both allocators.
std::vector<std::size_t> checked_order(const std::vector<FlowDemand>& flows, int total) {
    if (total < 0) throw DomainError("allocate: negative relay total");
    for (const auto& f : flows) {
        if (!(f.length > 0.0))
            throw DomainError("allocate: flow " + std::to_string(f.id) +
                              " has non-positive length");
    }
    std::vector<std::size_t> order(flows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return flows[l].id < flows[r].id; });
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (flows[order[k - 1]].id == flows[order[k]].id)
            throw DataError("allocate: duplicate flow id " +
                            std::to_string(flows[order[k]].id));
    }
    if (flows.empty() && total > 0)
        throw DataError("allocate: relays supplied but no flows to hold them");
    return order;
}

}  // namespace

std::vector<Vec2> equidistant_positions(const Vec2& src, const Vec2& dst, int m) {
    if (m < 0) throw DomainError("equidistant_positions: negative relay count");
    const Vec2 span = dst - src;
    if (span.norm_sq() == 0.0)
        throw DegenerateFlowError("equidistant_positions: coincident endpoints");
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int i = 1; i <= m; ++i)
        out.push_back(src + (static_cast<double>(i) / (m + 1)) * span);
    return out;
}

double ideal_flow_cost(double length, int relays, const Params& p) {
    if (!(length > 0.0)) throw DomainError("ideal_flow_cost: non-positive length");
    if (relays < 0) throw DomainError("ideal_flow_cost: negative relay count");
    const double hops = static_cast<double>(relays) + 1.0;
    return hops * link_weight(length / hops, p);
}

double allocation_cost(const std::vector<FlowDemand>& flows, const std::vector<int>& alloc,
                       const Params& p) {
    if (alloc.size() != flows.size())
        throw DataError("allocation_cost: allocation not aligned with flows");
    const auto order = checked_order(flows, 0);
    double total = 0.0;
    for (std::size_t idx : order) total += ideal_flow_cost(flows[idx].length, alloc[idx], p);
    return total;
}

std::vector<int> greedy_allocate(const std::vector<FlowDemand>& flows, int total,
                                 const Params& p) {
    const auto order = checked_order(flows, total);
    const std::size_t n = flows.size();
    std::vector<int> alloc(n, 0);
    if (n == 0) return alloc;

    // Round-robin deal in ascending flow id order.
    for (int k = 0; k < total; ++k) ++alloc[order[static_cast<std::size_t>(k) % n]];

    const auto cost = [&](std::size_t idx, int m) {
        return ideal_flow_cost(flows[idx].length, m, p);
    };

    // Migrate one relay at a time from the donor/recipient pair with the most
    // negative combined delta.  Convexity of the per-flow cost makes this
    // local search terminate at the global optimum; the iteration cap only
    // guards against a rounding-induced cycle, which would be a bug worth
    // hearing about rather than looping on.
    const long cap = 16L * (total + 1) * static_cast<long>(n) * static_cast<long>(n) + 256;
    for (long iter = 0; ; ++iter) {
        if (iter > cap) throw SimError("greedy_allocate: migration failed to converge");
        double best = 0.0;
        std::size_t best_r = n, best_t = n;
        for (std::size_t r : order) {
            if (alloc[r] < 1) continue;
            const double removal = cost(r, alloc[r] - 1) - cost(r, alloc[r]);
            for (std::size_t t : order) {
                if (t == r) continue;
                const double delta = removal + cost(t, alloc[t] + 1) - cost(t, alloc[t]);
                if (delta < best) {  // strict: ties keep the earliest pair
                    best = delta;
                    best_r = r;
                    best_t = t;
                }
            }
        }
        if (best_r == n) break;
        --alloc[best_r];
        ++alloc[best_t];
    }
    return alloc;
}

std::vector<int> brute_force_allocate(const std::vector<FlowDemand>& flows, int total,
                                      const Params& p) {
    if (total > 12) throw CapacityError("brute_force_allocate: relay total above 12");
    if (flows.size() > 5) throw CapacityError("brute_force_allocate: more than 5 flows");
    const auto order = checked_order(flows, total);
    const std::size_t n = flows.size();
    std::vector<int> alloc(n, 0);
    if (n == 0) return alloc;

    // Enumerate compositions of `total` in lexicographic order over the
    // ascending-flow-id axes; the first strict minimum wins, so ties resolve
    // toward loading low flow ids lightly.
    std::vector<int> current(n, 0), best_alloc;
    double best_cost = 0.0;
    bool have_best = false;
    const auto evaluate = [&]() {
        double c = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            c += ideal_flow_cost(flows[order[k]].length, current[k], p);
        if (!have_best || c < best_cost) {
            have_best = true;
            best_cost = c;
            best_alloc = current;
        }
    };
    const auto recurse = [&](auto&& self, std::size_t pos, int remaining) -> void {
        if (pos + 1 == n) {
            current[pos] = remaining;
            evaluate();
            return;
        }
        for (int m = 0; m <= remaining; ++m) {
            current[pos] = m;
            self(self, pos + 1, remaining - m);
        }
    };
    recurse(recurse, 0, total);

    for (std::size_t k = 0; k < n; ++k) alloc[order[k]] = best_alloc[k];
    return alloc;
}

}  // namespace relaynet
