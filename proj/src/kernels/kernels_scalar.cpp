// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

// Reference kernels. Compiled with -ffp-contract=off so that the AVX2
// variants can reproduce the membership arithmetic bit for bit.

#include <cmath>

#include "paf/kernels/kernels.hpp"

namespace paf::kernels {

namespace {

void gaussian_row_max_scalar(float* row, int n, float x_rel0, float dy2, float inv_sigma_sq) {
    for (int x = 0; x < n; ++x) {
        const float dx = static_cast<float>(x) + x_rel0;
        const float arg = (dx * dx + dy2) * inv_sigma_sq;
        const float value = arg < kGaussArgCut ? std::exp(-arg) : 0.0f;
        if (value > row[x]) row[x] = value;
    }
}

void paf_row_accum_scalar(float* sum_u, float* sum_v, float* count, int n, float dx0, float dy,
                          float limb_dx, float limb_dy, float len_sq, float sigma_l_len,
                          float vx, float vy) {
    for (int x = 0; x < n; ++x) {
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

double masked_sse_scalar(const float* pred, const float* gt, const float* mask, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = static_cast<double>(pred[i]) - static_cast<double>(gt[i]);
        acc += static_cast<double>(mask[i]) * d * d;
    }
    return acc;
}

double masked_sse_uv_scalar(const float* pred, const float* gt, const float* mask, int n_pixels) {
    double acc = 0.0;
    for (int i = 0; i < n_pixels; ++i) {
        const double du = static_cast<double>(pred[2 * i]) - static_cast<double>(gt[2 * i]);
        const double dv = static_cast<double>(pred[2 * i + 1]) - static_cast<double>(gt[2 * i + 1]);
        acc += static_cast<double>(mask[i]) * (du * du + dv * dv);
    }
    return acc;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops = {
        "scalar", gaussian_row_max_scalar, paf_row_accum_scalar, masked_sse_scalar,
        masked_sse_uv_scalar,
    };
    return ops;
}

}  // namespace paf::kernels
