// SPDX-License-Identifier: MIT
// relaynet: AVX2+FMA kernel lane. This translation unit is the only one built
// with -mavx2 -mfma; callers reach it through the dispatch table, never
// directly, so the binary stays runnable on non-AVX2 hosts.
#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstring>
#include <limits>

#include "relaynet/kernels.hpp"

namespace relaynet::kernels {

namespace {

// exp(x) for 4 doubles: classic range reduction x = k*ln2 + r followed by a
// Pade approximant of exp(r) on |r| <= ln2/2, then a 2^k exponent rebuild.
// Matches std::exp to within a couple of ulp across the reduced range.
inline __m256d exp_pd(__m256d x) {
    const __m256d kMaxLog = _mm256_set1_pd(7.09782712893383996843e2);
    const __m256d kMinLog = _mm256_set1_pd(-7.08396418532264106224e2);
    const __m256d big = _mm256_cmp_pd(x, kMaxLog, _CMP_GT_OQ);
    const __m256d small = _mm256_cmp_pd(x, kMinLog, _CMP_LT_OQ);
    __m256d xc = _mm256_min_pd(_mm256_max_pd(x, kMinLog), kMaxLog);

    // k = round(x * log2(e))
    const __m256d fk = _mm256_round_pd(
        _mm256_mul_pd(xc, _mm256_set1_pd(1.44269504088896340736)),
        _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);

    // r = x - k*ln2, with ln2 split for extra precision
    __m256d r = _mm256_fnmadd_pd(fk, _mm256_set1_pd(6.93145751953125e-1), xc);
    r = _mm256_fnmadd_pd(fk, _mm256_set1_pd(1.42860682030941723212e-6), r);
    const __m256d rr = _mm256_mul_pd(r, r);

    __m256d p = _mm256_set1_pd(1.26177193074810590878e-4);
    p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(3.02994407707441961300e-2));
    p = _mm256_fmadd_pd(p, rr, _mm256_set1_pd(9.99999999999999999910e-1));
    p = _mm256_mul_pd(p, r);

    __m256d q = _mm256_set1_pd(3.00198505138664455042e-6);
    q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.52448340349684104192e-3));
    q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.27265548208155028766e-1));
    q = _mm256_fmadd_pd(q, rr, _mm256_set1_pd(2.00000000000000000005e0));

    __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
    e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

    // e *= 2^k
    const __m128i k32 = _mm256_cvtpd_epi32(fk);
    const __m256i k64 = _mm256_cvtepi32_epi64(k32);
    const __m256i pow2 =
        _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
    e = _mm256_mul_pd(e, _mm256_castsi256_pd(pow2));

    e = _mm256_blendv_pd(e, _mm256_set1_pd(std::numeric_limits<double>::infinity()), big);
    e = _mm256_blendv_pd(e, _mm256_setzero_pd(), small);
    return e;
}

inline __m256d link_weight_pd(__m256d d, __m256d a, __m256d b, __m256d wmax) {
    const __m256d t = _mm256_mul_pd(a, _mm256_sub_pd(d, b));
    const __m256d w = _mm256_add_pd(_mm256_set1_pd(1.0), exp_pd(t));
    return _mm256_min_pd(w, wmax);  // +inf clamps to kMaxLinkWeight
}

inline __m256d reception_rate_pd(__m256d d, __m256d a, __m256d b) {
    const __m256d t = _mm256_mul_pd(a, _mm256_sub_pd(d, b));
    return _mm256_div_pd(_mm256_set1_pd(1.0),
                         _mm256_add_pd(_mm256_set1_pd(1.0), exp_pd(t)));
}

// Run the 4-wide op over a padded copy of the ragged tail so every element of
// a batch flows through the identical code path regardless of batch length.
template <typename Op>
inline void tail4(const double* in, double* out, std::size_t n, Op op) {
    alignas(32) double buf[4] = {in[0], in[0], in[0], in[0]};
    std::memcpy(buf, in, n * sizeof(double));
    alignas(32) double res[4];
    _mm256_store_pd(res, op(_mm256_load_pd(buf)));
    std::memcpy(out, res, n * sizeof(double));
}

void sq_dist_row_avx2(const double* xs, const double* ys, double x0, double y0,
                      double* out, std::size_t n) {
    const __m256d vx0 = _mm256_set1_pd(x0);
    const __m256d vy0 = _mm256_set1_pd(y0);
    // mul+add on purpose (no fma): keeps results bit-identical to the scalar lane.
    auto op = [&](std::size_t i) {
        const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vx0);
        const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vy0);
        return _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    };
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out + i, op(i));
    for (; i < n; ++i) {
        const double dx = xs[i] - x0;
        const double dy = ys[i] - y0;
        out[i] = dx * dx + dy * dy;
    }
}

void link_weight_avx2(const double* d, double* out, std::size_t n, double a, double b) {
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    const __m256d wmax = _mm256_set1_pd(kMaxLinkWeight);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, link_weight_pd(_mm256_loadu_pd(d + i), va, vb, wmax));
    if (i < n)
        tail4(d + i, out + i, n - i,
              [&](__m256d v) { return link_weight_pd(v, va, vb, wmax); });
}

void reception_rate_avx2(const double* d, double* out, std::size_t n, double a, double b) {
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, reception_rate_pd(_mm256_loadu_pd(d + i), va, vb));
    if (i < n)
        tail4(d + i, out + i, n - i,
              [&](__m256d v) { return reception_rate_pd(v, va, vb); });
}

}  // namespace

const KernelOps avx2_ops = {
    sq_dist_row_avx2,
    link_weight_avx2,
    reception_rate_avx2,
    "avx2",
};

}  // namespace relaynet::kernels

#endif  // x86-64
