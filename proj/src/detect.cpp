// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#include "paf/detect.hpp"

#include <algorithm>
#include <stdexcept>

namespace paf {

namespace {

// Out-of-grid neighbours read as 0 (confidence maps are non-negative).
inline float value_or_zero(const ScalarGrid& g, int x, int y) {
    if (x < 0 || y < 0 || x >= g.width() || y >= g.height()) return 0.0f;
    return g.at(x, y);
}

}  // namespace

std::vector<DetectionCandidate> find_peaks(const ScalarGrid& grid, int joint,
                                           const NmsParams& params, int id_offset) {
    if (!(params.threshold > 0.0f && params.threshold < 1.0f)) {
        throw std::invalid_argument("nms threshold must be in (0, 1)");
    }
    if (params.window < 3 || params.window % 2 == 0) {
        throw std::invalid_argument("nms window must be odd and >= 3");
    }
    const int half = params.window / 2;
    const int w = grid.width();
    const int h = grid.height();

    std::vector<DetectionCandidate> peaks;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const float value = grid.at(x, y);
            if (value < params.threshold) continue;
            bool is_peak = true;
            for (int ny = std::max(0, y - half); is_peak && ny <= std::min(h - 1, y + half); ++ny) {
                for (int nx = std::max(0, x - half); nx <= std::min(w - 1, x + half); ++nx) {
                    if (nx == x && ny == y) continue;
                    const float other = grid.at(nx, ny);
                    if (other > value) {
                        is_peak = false;
                        break;
                    }
                    // Equal values: the earlier pixel in row-major order wins.
                    if (other == value && (ny < y || (ny == y && nx < x))) {
                        is_peak = false;
                        break;
                    }
                }
            }
            if (!is_peak) continue;

            const float left = value_or_zero(grid, x - 1, y);
            const float right = value_or_zero(grid, x + 1, y);
            const float up = value_or_zero(grid, x, y - 1);
            const float down = value_or_zero(grid, x, y + 1);
            DetectionCandidate c;
            c.joint = joint;
            c.position = {
                std::clamp(x + (right > left ? 0.25 : (left > right ? -0.25 : 0.0)), 0.0,
                           static_cast<double>(w - 1)),
                std::clamp(y + (down > up ? 0.25 : (up > down ? -0.25 : 0.0)), 0.0,
                           static_cast<double>(h - 1))};
            c.score = value;
            peaks.push_back(c);
        }
    }

    // Row-major scan order makes this sort deterministic under ties.
    std::stable_sort(peaks.begin(), peaks.end(),
                     [](const DetectionCandidate& a, const DetectionCandidate& b) {
                         return a.score > b.score;
                     });
    for (std::size_t i = 0; i < peaks.size(); ++i) {
        peaks[i].id = id_offset + static_cast<int>(i);
    }
    return peaks;
}

std::vector<DetectionCandidate> detect_all(std::span<const ScalarGrid> confidences,
                                           const NmsParams& params) {
    std::vector<DetectionCandidate> all;
    int id_offset = 0;
    for (std::size_t j = 0; j < confidences.size(); ++j) {
        std::vector<DetectionCandidate> peaks =
            find_peaks(confidences[j], static_cast<int>(j), params, id_offset);
        id_offset += static_cast<int>(peaks.size());
        all.insert(all.end(), peaks.begin(), peaks.end());
    }
    return all;
}

}  // namespace paf
