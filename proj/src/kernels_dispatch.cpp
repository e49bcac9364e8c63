// SPDX-License-Identifier: MIT
// relaynet: kernel lane selection. Detection happens once, lazily; the chosen
// lane never changes behind the caller's back, which keeps runs reproducible.
#include <cstdlib>

#include "relaynet/errors.hpp"
#include "relaynet/kernels.hpp"

namespace relaynet::kernels {

namespace {

const KernelOps* g_active = nullptr;

const KernelOps* detect() {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_supported()) return &avx2_ops;
#endif
    return &scalar_ops;
}

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

void select_kernels(KernelMode mode) {
    switch (mode) {
        case KernelMode::kAuto:
            g_active = detect();
            return;
        case KernelMode::kScalar:
            g_active = &scalar_ops;
            return;
        case KernelMode::kAvx2:
#if defined(__x86_64__) || defined(_M_X64)
            if (avx2_supported()) {
                g_active = &avx2_ops;
                return;
            }
#endif
            throw DataError("kernels: avx2 lane requested but not supported on this CPU");
    }
    throw DataError("kernels: unknown mode");
}

void select_kernels(const std::string& mode) {
    if (mode == "auto")
        select_kernels(KernelMode::kAuto);
    else if (mode == "scalar")
        select_kernels(KernelMode::kScalar);
    else if (mode == "avx2")
        select_kernels(KernelMode::kAvx2);
    else
        throw DataError("kernels: unknown mode '" + mode + "' (want auto|scalar|avx2)");
}

const KernelOps& active() {
    if (g_active == nullptr) {
        if (const char* env = std::getenv("RELAYNET_KERNELS"))
            select_kernels(std::string(env));
        else
            g_active = detect();
    }
    return *g_active;
}

}  // namespace relaynet::kernels
