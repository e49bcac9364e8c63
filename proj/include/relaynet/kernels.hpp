// SPDX-License-Identifier: MIT
// relaynet: batched numeric kernels with runtime ISA dispatch.
//
// Every kernel has a scalar reference implementation and, on x86-64 with
// AVX2+FMA, a vector implementation. The two lanes are equivalence-tested;
// the active lane is chosen once per process (auto-detected, overridable via
// select_kernels or the RELAYNET_KERNELS environment variable), so repeated
// runs on the same machine produce byte-identical results.
#pragma once

#include <cstddef>
#include <string>

namespace relaynet::kernels {

/// Link weights are clamped to this value where the sigmoid tail overflows.
inline constexpr double kMaxLinkWeight = 1e18;

struct KernelOps {
    /// out[i] = (xs[i]-x0)^2 + (ys[i]-y0)^2
    void (*sq_dist_row)(const double* xs, const double* ys, double x0, double y0,
                        double* out, std::size_t n);
    /// out[i] = min(1 + exp(a*(d[i]-b)), kMaxLinkWeight)   (expected hop count)
    void (*link_weight)(const double* d, double* out, std::size_t n, double a, double b);
    /// out[i] = 1 / (1 + exp(a*(d[i]-b)))                  (delivery probability)
    void (*reception_rate)(const double* d, double* out, std::size_t n, double a, double b);
    const char* name;
};

enum class KernelMode { kAuto, kScalar, kAvx2 };

/// Force a lane. kAuto re-runs detection. Throws DataError if the requested
/// lane is not supported on this CPU.
void select_kernels(KernelMode mode);

/// Parse "auto" | "scalar" | "avx2" (case-sensitive) and select.
void select_kernels(const std::string& mode);

/// The active kernel table. First use runs auto-detection (honouring the
/// RELAYNET_KERNELS environment variable if set).
const KernelOps& active();

/// True when this CPU supports the AVX2+FMA lane.
bool avx2_supported();

extern const KernelOps scalar_ops;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelOps avx2_ops;
#endif

}  // namespace relaynet::kernels
