// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#include "paf/grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace paf {

namespace {

struct BilinearWeights {
    int x0, x1, y0, y1;
    double fx, fy;
};

BilinearWeights clamped_weights(Vec2 p, int width, int height) {
    double cx = std::clamp(p.x, 0.0, static_cast<double>(width - 1));
    double cy = std::clamp(p.y, 0.0, static_cast<double>(height - 1));
    BilinearWeights w;
    w.x0 = static_cast<int>(std::floor(cx));
    w.y0 = static_cast<int>(std::floor(cy));
    w.x1 = std::min(w.x0 + 1, width - 1);
    w.y1 = std::min(w.y0 + 1, height - 1);
    w.fx = cx - w.x0;
    w.fy = cy - w.y0;
    return w;
}

void check_dims(int width, int height) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("grid dimensions must be at least 1x1");
    }
}

}  // namespace

ScalarGrid::ScalarGrid(int width, int height, float fill)
    : width_(width), height_(height) {
    check_dims(width, height);
    data_.assign(static_cast<std::size_t>(width) * height, fill);
}

double ScalarGrid::sample(Vec2 p) const {
    const BilinearWeights w = clamped_weights(p, width_, height_);
    const double top = (1.0 - w.fx) * at(w.x0, w.y0) + w.fx * at(w.x1, w.y0);
    const double bot = (1.0 - w.fx) * at(w.x0, w.y1) + w.fx * at(w.x1, w.y1);
    return (1.0 - w.fy) * top + w.fy * bot;
}

VectorGrid::VectorGrid(int width, int height) : width_(width), height_(height) {
    check_dims(width, height);
    data_.assign(2 * static_cast<std::size_t>(width) * height, 0.0f);
}

Vec2 VectorGrid::sample(Vec2 p) const {
    const BilinearWeights w = clamped_weights(p, width_, height_);
    const auto [u00, v00] = at(w.x0, w.y0);
    const auto [u10, v10] = at(w.x1, w.y0);
    const auto [u01, v01] = at(w.x0, w.y1);
    const auto [u11, v11] = at(w.x1, w.y1);
    const double u_top = (1.0 - w.fx) * u00 + w.fx * u10;
    const double u_bot = (1.0 - w.fx) * u01 + w.fx * u11;
    const double v_top = (1.0 - w.fx) * v00 + w.fx * v10;
    const double v_bot = (1.0 - w.fx) * v01 + w.fx * v11;
    return {(1.0 - w.fy) * u_top + w.fy * u_bot, (1.0 - w.fy) * v_top + w.fy * v_bot};
}

}  // namespace paf
