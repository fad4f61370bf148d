// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "paf/geometry.hpp"

namespace paf {

// Raster convention used across the project: pixel centers sit at integer
// coordinates, the top-left pixel center is (0,0), x grows right, y grows
// down. Sampling outside the center lattice clamps to the edge values.

/// Dense row-major single-channel float grid.
class ScalarGrid {
public:
    ScalarGrid() = default;
    ScalarGrid(int width, int height, float fill = 0.0f);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }

    float at(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    float& at(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }

    const float* data() const { return data_.data(); }
    float* data() { return data_.data(); }
    float* row(int y) { return data_.data() + static_cast<std::size_t>(y) * width_; }
    const float* row(int y) const { return data_.data() + static_cast<std::size_t>(y) * width_; }

    /// Bilinear interpolation over pixel centers; clamps outside the lattice.
    double sample(Vec2 p) const;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<float> data_;
};

/// Dense row-major two-channel float grid; (u,v) interleaved per pixel.
class VectorGrid {
public:
    VectorGrid() = default;
    VectorGrid(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }

    std::pair<float, float> at(int x, int y) const {
        std::size_t i = 2 * (static_cast<std::size_t>(y) * width_ + x);
        return {data_[i], data_[i + 1]};
    }
    void set(int x, int y, float u, float v) {
        std::size_t i = 2 * (static_cast<std::size_t>(y) * width_ + x);
        data_[i] = u;
        data_[i + 1] = v;
    }

    const float* data() const { return data_.data(); }
    float* data() { return data_.data(); }

    /// Componentwise bilinear interpolation with edge clamping.
    Vec2 sample(Vec2 p) const;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<float> data_;
};

}  // namespace paf
