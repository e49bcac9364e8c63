// SPDX-License-Identifier: MIT
#include "relaynet/link_model.hpp"

#include <cmath>
#include <cstddef>

#include "relaynet/errors.hpp"
#include "relaynet/kernels.hpp"

namespace relaynet {

namespace {

void check_distance(double d) {
    if (!(d >= 0.0))  // catches negatives and NaN
        throw DomainError("link model: distance must be non-negative");
}

}  // namespace

double reception_rate(double d, const Params& p) {
    check_distance(d);
    double out;
    kernels::active().reception_rate(&d, &out, 1, p.a, p.b);
    return out;
}

double link_weight(double d, const Params& p) {
    check_distance(d);
    double out;
    kernels::active().link_weight(&d, &out, 1, p.a, p.b);
    return out;
}

void link_weight_batch(const double* d, double* out, std::size_t n, const Params& p) {
    for (std::size_t i = 0; i < n; ++i) check_distance(d[i]);
    kernels::active().link_weight(d, out, n, p.a, p.b);
}

double flow_cost(const std::vector<std::pair<AgentId, AgentId>>& edges,
                 const std::vector<Vec2>& pos, const Params& p) {
    if (edges.empty()) return 0.0;
    std::vector<double> dist;
    dist.reserve(edges.size());
    for (const auto& [i, j] : edges) {
        if (i < 1 || j < 1 || static_cast<std::size_t>(i) >= pos.size() ||
            static_cast<std::size_t>(j) >= pos.size())
            throw DataError("flow_cost: edge endpoint has no position");
        dist.push_back(distance(pos[i], pos[j]));
    }
    std::vector<double> w(dist.size());
    kernels::active().link_weight(dist.data(), w.data(), dist.size(), p.a, p.b);
    double total = 0.0;
    for (double wi : w) total += wi;
    return total;
}

}  // namespace relaynet
