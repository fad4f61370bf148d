// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "paf/grid.hpp"

namespace paf {

/// One peaked joint hypothesis.
struct DetectionCandidate {
    int joint = 0;
    Vec2 position;
    float score = 0.0f;
    int id = 0;
};

struct NmsParams {
    float threshold = 0.1f;
    int window = 3;
};

/// Local-maximum detection with NMS over one confidence map. A pixel is a
/// peak when its value is >= threshold and beats every neighbour inside the
/// window; ties go to the earlier pixel in row-major order. Positions get a
/// quarter-pixel shift per axis toward the higher adjacent neighbour.
/// Output is sorted by descending score; ids count up from id_offset in
/// that order.
std::vector<DetectionCandidate> find_peaks(const ScalarGrid& grid, int joint,
                                           const NmsParams& params, int id_offset = 0);

/// Runs find_peaks over every confidence map; ids are unique across joints.
std::vector<DetectionCandidate> detect_all(std::span<const ScalarGrid> confidences,
                                           const NmsParams& params);

}  // namespace paf
