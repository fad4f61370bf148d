// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#include "paf/pose.hpp"

#include <algorithm>
#include <stdexcept>

namespace paf {

int PersonPose::visible_count() const {
    return static_cast<int>(std::count(visible.begin(), visible.end(), true));
}

void PersonPose::visible_bounds(Vec2& lo, Vec2& hi) const {
    lo = {1e30, 1e30};
    hi = {-1e30, -1e30};
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (!visible[j]) continue;
        lo.x = std::min(lo.x, points[j].x);
        lo.y = std::min(lo.y, points[j].y);
        hi.x = std::max(hi.x, points[j].x);
        hi.y = std::max(hi.y, points[j].y);
    }
}

double PersonPose::visible_bbox_area() const {
    if (visible_count() == 0) return 0.0;
    Vec2 lo, hi;
    visible_bounds(lo, hi);
    return (hi.x - lo.x) * (hi.y - lo.y);
}

void FieldSet::validate() const {
    skeleton.validate();
    if (static_cast<int>(confidences.size()) != skeleton.joint_count()) {
        throw std::invalid_argument("confidence map count does not match skeleton joints");
    }
    if (static_cast<int>(affinities.size()) != skeleton.limb_count()) {
        throw std::invalid_argument("affinity field count does not match skeleton limbs");
    }
    const int w = mask.width();
    const int h = mask.height();
    for (const ScalarGrid& g : confidences) {
        if (g.width() != w || g.height() != h) {
            throw std::invalid_argument("confidence map dimensions disagree with mask");
        }
    }
    for (const VectorGrid& g : affinities) {
        if (g.width() != w || g.height() != h) {
            throw std::invalid_argument("affinity field dimensions disagree with mask");
        }
    }
}

}  // namespace paf
