// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paf/detect.hpp"
#include "paf/pose.hpp"

namespace paf {

enum class Side { left, right, top, bottom };

const char* side_name(Side side);
std::optional<Side> side_from_name(const std::string& name);

/// One accepted expansion step.
struct ExpansionRecord {
    int joint = 0;
    Side side = Side::left;
    double step = 0.0;
};

/// Axis-aligned box, continuous pixel coordinates.
struct Box {
    double x_min = 0.0, y_min = 0.0, x_max = 0.0, y_max = 0.0;
    std::optional<int> person_hint;
    std::vector<ExpansionRecord> history;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
    bool contains(Vec2 p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
    /// True when `inner` lies fully inside this box.
    bool contains_box(const Box& inner) const {
        return inner.x_min >= x_min && inner.x_max <= x_max && inner.y_min >= y_min &&
               inner.y_max <= y_max;
    }
};

/// Intersection over union; 0 for disjoint boxes, 1 for identical ones.
double iou(const Box& a, const Box& b);

/// Fraction of the pose's visible joints inside the closed box.
/// Throws when the pose has no visible joints.
double joint_coverage(const Box& box, const PersonPose& pose);

/// Mean outward alignment of joint j's incident affinity fields at `probe`:
/// each limb field is sampled bilinearly, negated when j is the limb's
/// child, and dotted with the side's outward normal.
double outwardness(const FieldSet& fields, int joint, const Box& box, Vec2 probe, Side side);

struct ExpandParams {
    double tau_out = 0.3;
    double step_frac = 0.05;
    int max_steps = 10;
    double margin = 8.0;
    double epsilon = 1e-6;
};

/// The occlusion-handling box expansion: for each box in input order,
/// joints in breadth-first skeleton order, sides in (left, right, top,
/// bottom) order, a side is pushed outward step by step while the joint's
/// best in-box candidate sits within `margin` of it, the fields point
/// outward stronger than tau_out, and no pairwise IoU rises more than
/// epsilon above its value between the input boxes. Output boxes always
/// contain their inputs.
std::vector<Box> expand_boxes(std::vector<Box> boxes, const FieldSet& fields,
                              std::span<const DetectionCandidate> candidates,
                              const ExpandParams& params);

}  // namespace paf
