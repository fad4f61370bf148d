// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#include "paf/boxes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "paf/errors.hpp"

namespace paf {

const char* side_name(Side side) {
    switch (side) {
        case Side::left: return "left";
        case Side::right: return "right";
        case Side::top: return "top";
        case Side::bottom: return "bottom";
    }
    return "left";
}

std::optional<Side> side_from_name(const std::string& name) {
    if (name == "left") return Side::left;
    if (name == "right") return Side::right;
    if (name == "top") return Side::top;
    if (name == "bottom") return Side::bottom;
    return std::nullopt;
}

double iou(const Box& a, const Box& b) {
    const double ix = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
    const double iy = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
    if (ix <= 0.0 || iy <= 0.0) return 0.0;
    const double inter = ix * iy;
    return inter / (a.area() + b.area() - inter);
}

double joint_coverage(const Box& box, const PersonPose& pose) {
    int visible = 0;
    int inside = 0;
    for (std::size_t j = 0; j < pose.points.size(); ++j) {
        if (!pose.visible[j]) continue;
        ++visible;
        if (box.contains(pose.points[j])) ++inside;
    }
    if (visible == 0) throw std::invalid_argument("pose has no visible joints");
    return static_cast<double>(inside) / visible;
}

namespace {

Vec2 outward_normal(Side side) {
    switch (side) {
        case Side::left: return {-1.0, 0.0};
        case Side::right: return {1.0, 0.0};
        case Side::top: return {0.0, -1.0};
        case Side::bottom: return {0.0, 1.0};
    }
    return {0.0, 0.0};
}

}  // namespace

double outwardness(const FieldSet& fields, int joint, const Box& box, Vec2 probe, Side side) {
    (void)box;
    const Vec2 n = outward_normal(side);
    double acc = 0.0;
    int incident = 0;
    for (int c = 0; c < fields.skeleton.limb_count(); ++c) {
        const auto& limb = fields.skeleton.limbs[c];
        if (limb[0] != joint && limb[1] != joint) continue;
        Vec2 v = fields.affinities[c].sample(probe);
        // Fields run parent->child; flip when the in-box joint is the child
        // so positive always means "toward the missing joint".
        if (limb[1] == joint) v = {-v.x, -v.y};
        acc += dot(v, n);
        ++incident;
    }
    if (incident == 0) throw std::invalid_argument("joint has no incident limbs");
    return acc / incident;
}

namespace {

double side_distance(const Box& box, Vec2 p, Side side) {
    switch (side) {
        case Side::left: return p.x - box.x_min;
        case Side::right: return box.x_max - p.x;
        case Side::top: return p.y - box.y_min;
        case Side::bottom: return box.y_max - p.y;
    }
    return 0.0;
}

// The probe starts at the joint candidate and advances toward the side by
// up to margin/2, staying inside the box. Limb bands start at the joint,
// so sampling exactly there sees only the bilinear edge of the outgoing
// field; a small advance into the band reads its full value.
Vec2 probe_point(const Box& box, Vec2 p, Side side, double margin) {
    const double advance = std::min(margin / 2.0, side_distance(box, p, side));
    Vec2 probe = p;
    switch (side) {
        case Side::left: probe.x = std::clamp(p.x - advance, box.x_min, box.x_max); break;
        case Side::right: probe.x = std::clamp(p.x + advance, box.x_min, box.x_max); break;
        case Side::top: probe.y = std::clamp(p.y - advance, box.y_min, box.y_max); break;
        case Side::bottom: probe.y = std::clamp(p.y + advance, box.y_min, box.y_max); break;
    }
    return probe;
}

Box pushed(const Box& box, Side side, double step) {
    Box out = box;
    switch (side) {
        case Side::left: out.x_min -= step; break;
        case Side::right: out.x_max += step; break;
        case Side::top: out.y_min -= step; break;
        case Side::bottom: out.y_max += step; break;
    }
    return out;
}

}  // namespace

std::vector<Box> expand_boxes(std::vector<Box> boxes, const FieldSet& fields,
                              std::span<const DetectionCandidate> candidates,
                              const ExpandParams& params) {
    fields.validate();
    const int k = fields.skeleton.joint_count();
    for (const DetectionCandidate& c : candidates) {
        if (c.joint < 0 || c.joint >= k) {
            throw SkeletonMismatchError("candidate joint index outside skeleton");
        }
    }
    for (const Box& b : boxes) {
        if (!(b.x_min < b.x_max) || !(b.y_min < b.y_max)) {
            throw std::invalid_argument("degenerate box");
        }
    }

    const std::size_t n = boxes.size();
    // Pairwise IoU baseline over the *input* boxes; expansion may never push
    // any pair more than epsilon above it.
    std::vector<std::vector<double>> base_iou(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            base_iou[i][j] = base_iou[j][i] = iou(boxes[i], boxes[j]);
        }
    }

    // Candidate ownership by containment in the input boxes, ties to the
    // smallest-area box.
    std::vector<std::vector<const DetectionCandidate*>> owned(n);
    for (const DetectionCandidate& c : candidates) {
        int owner = -1;
        double owner_area = 0.0;
        for (std::size_t b = 0; b < n; ++b) {
            if (!boxes[b].contains(c.position)) continue;
            if (owner < 0 || boxes[b].area() < owner_area) {
                owner = static_cast<int>(b);
                owner_area = boxes[b].area();
            }
        }
        if (owner >= 0) owned[owner].push_back(&c);
    }

    const std::vector<int> joint_order = bfs_order(fields.skeleton);
    constexpr Side kSides[] = {Side::left, Side::right, Side::top, Side::bottom};

    for (std::size_t b = 0; b < n; ++b) {
        for (int joint : joint_order) {
            // Best in-box candidate of this joint: highest score, then
            // lowest id.
            const DetectionCandidate* best = nullptr;
            for (const DetectionCandidate* c : owned[b]) {
                if (c->joint != joint) continue;
                if (best == nullptr || c->score > best->score ||
                    (c->score == best->score && c->id < best->id)) {
                    best = c;
                }
            }
            if (best == nullptr) continue;

            for (Side side : kSides) {
                Box& box = boxes[b];
                if (side_distance(box, best->position, side) > params.margin) continue;
                const Vec2 probe = probe_point(box, best->position, side, params.margin);
                if (!(outwardness(fields, joint, box, probe, side) > params.tau_out)) continue;

                const double step = params.step_frac *
                                    (side == Side::left || side == Side::right ? box.width()
                                                                               : box.height());
                if (!(step > 0.0)) continue;
                for (int s = 0; s < params.max_steps; ++s) {
                    const Box tentative = pushed(boxes[b], side, step);
                    bool ok = true;
                    for (std::size_t other = 0; other < n; ++other) {
                        if (other == b) continue;
                        if (iou(tentative, boxes[other]) > base_iou[b][other] + params.epsilon) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) break;
                    boxes[b] = tentative;
                    boxes[b].history.push_back({joint, side, step});
                }
            }
        }
    }
    return boxes;
}

}  // namespace paf
