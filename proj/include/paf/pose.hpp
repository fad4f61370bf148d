// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "paf/geometry.hpp"
#include "paf/grid.hpp"
#include "paf/skeleton.hpp"

namespace paf {

/// One person's joint positions with per-joint visibility. Ground truth and
/// predictions share this type; arrays are indexed by skeleton joint index.
struct PersonPose {
    std::vector<Vec2> points;
    std::vector<bool> visible;

    int joint_count() const { return static_cast<int>(points.size()); }
    int visible_count() const;

    /// Axis-aligned bounds of the visible joints (tight, zero-size allowed).
    /// Only meaningful when at least one joint is visible.
    void visible_bounds(Vec2& lo, Vec2& hi) const;
    double visible_bbox_area() const;
};

/// The dense fields of one image: K confidence maps, C affinity fields and
/// the annotation mask, all sharing one raster.
struct FieldSet {
    Skeleton skeleton;
    std::vector<ScalarGrid> confidences;
    std::vector<VectorGrid> affinities;
    ScalarGrid mask;

    int width() const { return mask.width(); }
    int height() const { return mask.height(); }

    /// Throws std::invalid_argument when grid counts or dimensions disagree
    /// with the skeleton.
    void validate() const;
};

}  // namespace paf
