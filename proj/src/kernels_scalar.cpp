// SPDX-License-Identifier: MIT
// relaynet: scalar reference kernels. These definitions are the ground truth
// the vector lanes are tested against.
#include <cmath>

#include "relaynet/kernels.hpp"

namespace relaynet::kernels {

namespace {

void sq_dist_row_scalar(const double* xs, const double* ys, double x0, double y0,
                        double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - x0;
        const double dy = ys[i] - y0;
        // Written as mul+add (no fma) so the vector lane can match bit-for-bit.
        out[i] = dx * dx + dy * dy;
    }
}

void link_weight_scalar(const double* d, double* out, std::size_t n, double a, double b) {
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 1.0 + std::exp(a * (d[i] - b));
        out[i] = (w <= kMaxLinkWeight) ? w : kMaxLinkWeight;  // inf clamps too
    }
}

void reception_rate_scalar(const double* d, double* out, std::size_t n, double a, double b) {
    for (std::size_t i = 0; i < n; ++i) {
        // 1 - 1/(1+exp(-t)) evaluated in the cancellation-free form 1/(1+exp(t)).
        out[i] = 1.0 / (1.0 + std::exp(a * (d[i] - b)));
    }
}

}  // namespace

const KernelOps scalar_ops = {
    sq_dist_row_scalar,
    link_weight_scalar,
    reception_rate_scalar,
    "scalar",
};

}  // namespace relaynet::kernels
