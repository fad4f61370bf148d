// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#include "paf/render_svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace paf {

namespace {

const char* kPalette[] = {"#e6194b", "#3cb44b", "#4363d8", "#f58231",
                          "#911eb4", "#46f0f0", "#f032e6", "#9a6324"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

Box initial_box(const Box& box) {
    Box b = box;
    for (auto it = b.history.rbegin(); it != b.history.rend(); ++it) {
        switch (it->side) {
            case Side::left: b.x_min += it->step; break;
            case Side::right: b.x_max -= it->step; break;
            case Side::top: b.y_min += it->step; break;
            case Side::bottom: b.y_max -= it->step; break;
        }
    }
    return b;
}

}  // namespace

std::string render_svg(const RenderInput& input) {
    const bool have_poses =
        input.poses != nullptr && input.skeleton != nullptr && !input.poses->empty();
    const bool have_boxes = input.boxes != nullptr && !input.boxes->empty();
    const bool have_fields = input.fields != nullptr;
    if (!have_poses && !have_boxes && !have_fields) {
        throw std::invalid_argument("nothing to render");
    }

    double w = 0.0, h = 0.0;
    if (have_fields) {
        w = input.fields->width();
        h = input.fields->height();
    } else {
        // Canvas from drawn extents plus padding.
        double max_x = 1.0, max_y = 1.0;
        if (have_poses) {
            for (const AssembledPose& pose : *input.poses) {
                for (const auto& p : pose.points) {
                    if (!p.has_value()) continue;
                    max_x = std::max(max_x, p->x);
                    max_y = std::max(max_y, p->y);
                }
            }
        }
        if (have_boxes) {
            for (const Box& box : *input.boxes) {
                max_x = std::max(max_x, box.x_max);
                max_y = std::max(max_y, box.y_max);
            }
        }
        w = max_x + 10.0;
        h = max_y + 10.0;
    }

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) + "\" height=\"" +
           fmt(h) + "\" viewBox=\"0 0 " + fmt(w) + " " + fmt(h) + "\">\n";
    svg += "<rect width=\"" + fmt(w) + "\" height=\"" + fmt(h) + "\" fill=\"white\"/>\n";

    if (have_fields && input.quiver_stride > 0) {
        const FieldSet& fields = *input.fields;
        for (std::size_t c = 0; c < fields.affinities.size(); ++c) {
            const VectorGrid& field = fields.affinities[c];
            for (int y = 0; y < field.height(); y += input.quiver_stride) {
                for (int x = 0; x < field.width(); x += input.quiver_stride) {
                    const auto [u, v] = field.at(x, y);
                    const double mag = std::sqrt(static_cast<double>(u) * u +
                                                 static_cast<double>(v) * v);
                    if (mag < 0.1) continue;
                    const double len = 0.45 * input.quiver_stride;
                    svg += "<path d=\"M " + fmt(x) + " " + fmt(y) + " L " + fmt(x + len * u) +
                           " " + fmt(y + len * v) + "\" stroke=\"#bbbbbb\" stroke-width=\"0.6\"/>\n";
                }
            }
        }
    }

    if (have_boxes) {
        for (const Box& box : *input.boxes) {
            if (!box.history.empty()) {
                const Box original = initial_box(box);
                svg += "<rect x=\"" + fmt(original.x_min) + "\" y=\"" + fmt(original.y_min) +
                       "\" width=\"" + fmt(original.width()) + "\" height=\"" +
                       fmt(original.height()) +
                       "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\" "
                       "stroke-dasharray=\"4 3\"/>\n";
            }
            svg += "<rect x=\"" + fmt(box.x_min) + "\" y=\"" + fmt(box.y_min) + "\" width=\"" +
                   fmt(box.width()) + "\" height=\"" + fmt(box.height()) +
                   "\" fill=\"none\" stroke=\"#222222\" stroke-width=\"1.5\"/>\n";
        }
    }

    if (have_poses) {
        const Skeleton& skeleton = *input.skeleton;
        for (std::size_t p = 0; p < input.poses->size(); ++p) {
            const AssembledPose& pose = (*input.poses)[p];
            const char* color = kPalette[p % (sizeof(kPalette) / sizeof(kPalette[0]))];
            for (const auto& limb : skeleton.limbs) {
                const auto& a = pose.points[limb[0]];
                const auto& b = pose.points[limb[1]];
                if (!a.has_value() || !b.has_value()) continue;
                svg += "<line x1=\"" + fmt(a->x) + "\" y1=\"" + fmt(a->y) + "\" x2=\"" +
                       fmt(b->x) + "\" y2=\"" + fmt(b->y) + "\" stroke=\"" + color +
                       "\" stroke-width=\"2\"/>\n";
            }
            for (const auto& point : pose.points) {
                if (!point.has_value()) continue;
                svg += "<circle cx=\"" + fmt(point->x) + "\" cy=\"" + fmt(point->y) +
                       "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
            }
        }
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace paf
