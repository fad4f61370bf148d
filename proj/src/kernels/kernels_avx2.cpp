// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

// AVX2 kernels. Membership and distance arithmetic sticks to mul/add (no
// FMA) so results match the scalar reference bit for bit; only the Gaussian
// differs, through the polynomial exp below.

#include <cmath>
#include <immintrin.h>

#include "paf/kernels/kernels.hpp"

namespace paf::kernels {

const Ops* avx2_ops_impl();

namespace {

// Cephes-style single-precision exp, good to a couple of 1e-7 relative.
// Exact 1.0 at x == 0.
inline __m256 exp256_ps(__m256 x) {
    const __m256 exp_lo = _mm256_set1_ps(-88.3762626647949f);
    const __m256 log2ef = _mm256_set1_ps(1.44269504088896341f);
    const __m256 c1 = _mm256_set1_ps(0.693359375f);
    const __m256 c2 = _mm256_set1_ps(-2.12194440e-4f);
    const __m256 one = _mm256_set1_ps(1.0f);

    x = _mm256_max_ps(x, exp_lo);

    __m256 fx = _mm256_add_ps(_mm256_mul_ps(x, log2ef), _mm256_set1_ps(0.5f));
    fx = _mm256_floor_ps(fx);

    x = _mm256_sub_ps(x, _mm256_mul_ps(fx, c1));
    x = _mm256_sub_ps(x, _mm256_mul_ps(fx, c2));

    const __m256 z = _mm256_mul_ps(x, x);
    __m256 y = _mm256_set1_ps(1.9875691500e-4f);
    y = _mm256_add_ps(_mm256_mul_ps(y, x), _mm256_set1_ps(1.3981999507e-3f));
    y = _mm256_add_ps(_mm256_mul_ps(y, x), _mm256_set1_ps(8.3334519073e-3f));
    y = _mm256_add_ps(_mm256_mul_ps(y, x), _mm256_set1_ps(4.1665795894e-2f));
    y = _mm256_add_ps(_mm256_mul_ps(y, x), _mm256_set1_ps(1.6666665459e-1f));
    y = _mm256_add_ps(_mm256_mul_ps(y, x), _mm256_set1_ps(5.0000001201e-1f));
    y = _mm256_add_ps(_mm256_add_ps(_mm256_mul_ps(y, z), x), one);

    __m256i pow2 = _mm256_cvttps_epi32(fx);
    pow2 = _mm256_add_epi32(pow2, _mm256_set1_epi32(0x7f));
    pow2 = _mm256_slli_epi32(pow2, 23);
    return _mm256_mul_ps(y, _mm256_castsi256_ps(pow2));
}

const __m256 kLaneIndex = _mm256_setr_ps(0.f, 1.f, 2.f, 3.f, 4.f, 5.f, 6.f, 7.f);

inline __m256 gauss_vec(__m256 dx, __m256 dy2, __m256 inv_s2, __m256 cut) {
    const __m256 arg = _mm256_mul_ps(_mm256_add_ps(_mm256_mul_ps(dx, dx), dy2), inv_s2);
    const __m256 in_range = _mm256_cmp_ps(arg, cut, _CMP_LT_OQ);
    const __m256 value = exp256_ps(_mm256_sub_ps(_mm256_setzero_ps(), arg));
    return _mm256_and_ps(value, in_range);
}

void gaussian_row_max_avx2(float* row, int n, float x_rel0, float dy2, float inv_sigma_sq) {
    if (n < 8) {
        for (int x = 0; x < n; ++x) {
            const float dx = static_cast<float>(x) + x_rel0;
            const float arg = (dx * dx + dy2) * inv_sigma_sq;
            const float value = arg < kGaussArgCut ? std::exp(-arg) : 0.0f;
            if (value > row[x]) row[x] = value;
        }
        return;
    }
    const __m256 vdy2 = _mm256_set1_ps(dy2);
    const __m256 vinv = _mm256_set1_ps(inv_sigma_sq);
    const __m256 vcut = _mm256_set1_ps(kGaussArgCut);
    int x = 0;
    for (; x + 8 <= n; x += 8) {
        const __m256 dx = _mm256_add_ps(
            _mm256_add_ps(_mm256_set1_ps(static_cast<float>(x)), kLaneIndex),
            _mm256_set1_ps(x_rel0));
        const __m256 value = gauss_vec(dx, vdy2, vinv, vcut);
        _mm256_storeu_ps(row + x, _mm256_max_ps(_mm256_loadu_ps(row + x), value));
    }
    if (x < n) {
        // Redo the final 8 lanes overlapping; max is idempotent.
        x = n - 8;
        const __m256 dx = _mm256_add_ps(
            _mm256_add_ps(_mm256_set1_ps(static_cast<float>(x)), kLaneIndex),
            _mm256_set1_ps(x_rel0));
        const __m256 value = gauss_vec(dx, vdy2, vinv, vcut);
        _mm256_storeu_ps(row + x, _mm256_max_ps(_mm256_loadu_ps(row + x), value));
    }
}

void paf_row_accum_avx2(float* sum_u, float* sum_v, float* count, int n, float dx0, float dy,
                        float limb_dx, float limb_dy, float len_sq, float sigma_l_len,
                        float vx, float vy) {
    const __m256 vdx = _mm256_set1_ps(limb_dx);
    const __m256 vdy_limb = _mm256_set1_ps(limb_dy);
    const __m256 vvx = _mm256_set1_ps(vx);
    const __m256 vvy = _mm256_set1_ps(vy);
    const __m256 vdy = _mm256_set1_ps(dy);
    const __m256 vlen = _mm256_set1_ps(len_sq);
    const __m256 vsig = _mm256_set1_ps(sigma_l_len);
    const __m256 vzero = _mm256_setzero_ps();
    const __m256 vone = _mm256_set1_ps(1.0f);
    const __m256 abs_mask = _mm256_castsi256_ps(_mm256_set1_epi32(0x7fffffff));
    int x = 0;
    for (; x + 8 <= n; x += 8) {
        const __m256 dx = _mm256_add_ps(
            _mm256_set1_ps(dx0), _mm256_add_ps(_mm256_set1_ps(static_cast<float>(x)), kLaneIndex));
        const __m256 along = _mm256_add_ps(_mm256_mul_ps(vdx, dx), _mm256_mul_ps(vdy_limb, vdy));
        const __m256 perp = _mm256_sub_ps(_mm256_mul_ps(vdx, vdy), _mm256_mul_ps(vdy_limb, dx));
        __m256 member = _mm256_cmp_ps(along, vzero, _CMP_GE_OQ);
        member = _mm256_and_ps(member, _mm256_cmp_ps(along, vlen, _CMP_LE_OQ));
        member = _mm256_and_ps(member,
                               _mm256_cmp_ps(_mm256_and_ps(perp, abs_mask), vsig, _CMP_LE_OQ));
        _mm256_storeu_ps(sum_u + x, _mm256_add_ps(_mm256_loadu_ps(sum_u + x),
                                                  _mm256_and_ps(member, vvx)));
        _mm256_storeu_ps(sum_v + x, _mm256_add_ps(_mm256_loadu_ps(sum_v + x),
                                                  _mm256_and_ps(member, vvy)));
        _mm256_storeu_ps(count + x, _mm256_add_ps(_mm256_loadu_ps(count + x),
                                                  _mm256_and_ps(member, vone)));
    }
    for (; x < n; ++x) {
        const float dx = dx0 + static_cast<float>(x);
        const float along = limb_dx * dx + limb_dy * dy;
        const float perp = limb_dx * dy - limb_dy * dx;
        if (along >= 0.0f && along <= len_sq && std::fabs(perp) <= sigma_l_len) {
            sum_u[x] += vx;
            sum_v[x] += vy;
            count[x] += 1.0f;
        }
    }
}

inline __m256d cvt_lo_pd(__m256 v) { return _mm256_cvtps_pd(_mm256_castps256_ps128(v)); }
inline __m256d cvt_hi_pd(__m256 v) { return _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1)); }

inline double reduce_pd(__m256d acc) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    return ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
}

double masked_sse_avx2(const float* pred, const float* gt, const float* mask, int n) {
    __m256d acc = _mm256_setzero_pd();
    int i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256 p = _mm256_loadu_ps(pred + i);
        const __m256 g = _mm256_loadu_ps(gt + i);
        const __m256 w = _mm256_loadu_ps(mask + i);
        const __m256d d_lo = _mm256_sub_pd(cvt_lo_pd(p), cvt_lo_pd(g));
        const __m256d d_hi = _mm256_sub_pd(cvt_hi_pd(p), cvt_hi_pd(g));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(cvt_lo_pd(w), _mm256_mul_pd(d_lo, d_lo)));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(cvt_hi_pd(w), _mm256_mul_pd(d_hi, d_hi)));
    }
    double tail = 0.0;
    for (; i < n; ++i) {
        const double d = static_cast<double>(pred[i]) - static_cast<double>(gt[i]);
        tail += static_cast<double>(mask[i]) * d * d;
    }
    return reduce_pd(acc) + tail;
}

double masked_sse_uv_avx2(const float* pred, const float* gt, const float* mask, int n_pixels) {
    __m256d acc = _mm256_setzero_pd();
    int i = 0;
    for (; i + 4 <= n_pixels; i += 4) {
        const __m256 p = _mm256_loadu_ps(pred + 2 * i);
        const __m256 g = _mm256_loadu_ps(gt + 2 * i);
        const __m256d d_lo = _mm256_sub_pd(cvt_lo_pd(p), cvt_lo_pd(g));
        const __m256d d_hi = _mm256_sub_pd(cvt_hi_pd(p), cvt_hi_pd(g));
        // Pairs (u,v) share one mask value: duplicate mask lanes.
        const __m128 w = _mm_loadu_ps(mask + i);
        const __m256d w_lo = _mm256_cvtps_pd(_mm_unpacklo_ps(w, w));
        const __m256d w_hi = _mm256_cvtps_pd(_mm_unpackhi_ps(w, w));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(w_lo, _mm256_mul_pd(d_lo, d_lo)));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(w_hi, _mm256_mul_pd(d_hi, d_hi)));
    }
    double tail = 0.0;
    for (; i < n_pixels; ++i) {
        const double du = static_cast<double>(pred[2 * i]) - static_cast<double>(gt[2 * i]);
        const double dv = static_cast<double>(pred[2 * i + 1]) - static_cast<double>(gt[2 * i + 1]);
        tail += static_cast<double>(mask[i]) * (du * du + dv * dv);
    }
    return reduce_pd(acc) + tail;
}

}  // namespace

const Ops* avx2_ops_impl() {
    static const Ops ops = {
        "avx2", gaussian_row_max_avx2, paf_row_accum_avx2, masked_sse_avx2, masked_sse_uv_avx2,
    };
    return &ops;
}

}  // namespace paf::kernels
