// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paf/pose.hpp"

namespace paf {

/// Field construction parameters: sigma is the confidence peak spread,
/// sigma_l the limb band half-width, both in pixels.
struct SynthParams {
    double sigma = 7.0;
    double sigma_l = 4.0;
};

/// Confidence map for joint j: per person exp(-|p - x|^2 / sigma^2)
/// evaluated at pixel centers, combined across people with max. Invisible
/// joints contribute nothing.
ScalarGrid confidence_map(const Skeleton& skeleton, std::span<const PersonPose> people, int joint,
                          const SynthParams& params, int width, int height);

/// Part affinity field for limb c: per person the unit limb vector on the
/// band 0 <= v.(p-x1) <= len, |v_perp.(p-x1)| <= sigma_l, averaged over the
/// people whose band covers the pixel. Zero-length limbs are skipped.
VectorGrid paf_map(const Skeleton& skeleton, std::span<const PersonPose> people, int limb,
                   const SynthParams& params, int width, int height);

/// Binary annotation mask: union over people of all limb bands dilated by
/// sigma plus sigma-radius disks at visible joints.
ScalarGrid annotation_mask(const Skeleton& skeleton, std::span<const PersonPose> people,
                           const SynthParams& params, int width, int height);

/// Masked sum of squared differences, accumulated in 64-bit.
double field_loss(const ScalarGrid& pred, const ScalarGrid& gt, const ScalarGrid& mask);
double field_loss(const VectorGrid& pred, const VectorGrid& gt, const ScalarGrid& mask);

/// All fields of a scene in one call.
FieldSet synthesize_fields(const Skeleton& skeleton, std::span<const PersonPose> people,
                           const SynthParams& params, int width, int height);

/// Placement frame for generated scenes; joints stay at least `margin`
/// pixels away from the bounds.
struct SceneBounds {
    double width = 368.0;
    double height = 368.0;
    double margin = 12.0;
};

struct FixtureOptions {
    /// Minimum distance between same-type joints of different people;
    /// non-positive means 4 * sigma.
    double min_separation = 0.0;
    /// Snap joints to integer pixel centers.
    bool snap_to_pixels = false;
    int max_retries = 2000;
};

/// Deterministic scene generator: scaled/rotated template poses placed in
/// bounds. occlusion_level 0 keeps per-person bounding boxes disjoint and
/// everyone visible; higher levels deliberately overlap people and hide
/// joints. Throws std::runtime_error when placement keeps failing.
std::vector<PersonPose> scene_fixture(std::uint64_t seed, int n_people, const Skeleton& skeleton,
                                      const SceneBounds& bounds, double occlusion_level,
                                      const SynthParams& params = {},
                                      const FixtureOptions& options = {});

}  // namespace paf
