// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "paf/assemble.hpp"
#include "paf/boxes.hpp"
#include "paf/pose.hpp"

namespace paf {

/// What to draw; any subset of the pointers may be set.
struct RenderInput {
    const FieldSet* fields = nullptr;  // canvas size + optional quiver
    const Skeleton* skeleton = nullptr;
    const std::vector<AssembledPose>* poses = nullptr;
    const std::vector<Box>* boxes = nullptr;
    /// Quiver arrow spacing in pixels; 0 disables the quiver layer.
    int quiver_stride = 0;
};

/// Deterministic SVG: one <line> per drawn limb, <circle> per joint,
/// <rect> per box (plus a dashed <rect> for the pre-expansion outline of
/// boxes with history), quiver arrows as <path>. Throws
/// std::invalid_argument when there is nothing to draw.
std::string render_svg(const RenderInput& input);

}  // namespace paf
