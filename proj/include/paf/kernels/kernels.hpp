// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace paf::kernels {

// Row kernels behind the dense field synthesis and loss reductions. Each
// function exists as a scalar reference and, on x86-64, an AVX2 variant;
// the active table is picked once at startup from CPU features and can be
// pinned with PAFTOOL_ISA=scalar|avx2.
//
// The scalar versions are compiled with FP contraction off and the AVX2
// versions avoid FMA in the membership arithmetic, so the two produce
// bit-identical results everywhere except the Gaussian, whose vector
// variant uses a polynomial exp accurate to a few 1e-7 absolute.

// Gaussian arguments at or above this cut evaluate to exactly 0 in every
// variant; exp(-87) is already denormal in f32.
inline constexpr float kGaussArgCut = 87.0f;

struct Ops {
    const char* name;

    // row[x] = max(row[x], exp(-((x + x_rel0)^2 + dy2) * inv_sigma_sq))
    // for x in [0, n); arguments >= kGaussArgCut produce exactly 0.
    // x_rel0 is (row start x) - (peak x).
    void (*gaussian_row_max)(float* row, int n, float x_rel0, float dy2, float inv_sigma_sq);

    // Limb-band membership accumulation for one row at offset dy from the
    // limb origin. dx0 is (row start x) - (origin x). Membership is tested
    // on unnormalized products, 0 <= d.(p-a) <= |d|^2 and
    // |d_perp.(p-a)| <= sigma_l * |d|, which stays exact in f32 for
    // integer geometry; members accumulate the unit vector (vx, vy) into
    // sum_u/sum_v and 1 into count.
    void (*paf_row_accum)(float* sum_u, float* sum_v, float* count, int n, float dx0, float dy,
                          float limb_dx, float limb_dy, float len_sq, float sigma_l_len,
                          float vx, float vy);

    // sum over i of mask[i] * (pred[i] - gt[i])^2, accumulated in f64.
    double (*masked_sse)(const float* pred, const float* gt, const float* mask, int n);

    // Two interleaved channels per pixel, one mask value per pixel.
    double (*masked_sse_uv)(const float* pred, const float* gt, const float* mask, int n_pixels);
};

/// Scalar reference implementations; always available.
const Ops& scalar_ops();

/// AVX2 implementations, or nullptr when the build or the CPU lacks AVX2.
const Ops* avx2_ops();

/// The dispatched table used by the library.
const Ops& active_ops();

}  // namespace paf::kernels
