// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "paf/grid.hpp"

namespace paf {

// ".paft" binary tensor format, little-endian throughout:
//   magic   "PAFT"        4 bytes
//   version u16 = 1
//   dtype   u8  = 1       (f32)
//   rank    u8
//   dims    rank x u32
//   payload prod(dims) x f32, row-major (last dim fastest)
// Round trips are bit-exact.

struct Tensor {
    std::vector<std::uint32_t> dims;
    std::vector<float> data;
};

void write_tensor(const std::filesystem::path& path, std::span<const std::uint32_t> dims,
                  std::span<const float> data);
Tensor read_tensor(const std::filesystem::path& path);

/// Writes a stack of scalar grids as one rank-3 tensor (channel, height, width).
void write_grids(const std::filesystem::path& path, std::span<const ScalarGrid> grids);
std::vector<ScalarGrid> read_grids(const std::filesystem::path& path);

/// Vector grids are stored planar: channels 2c and 2c+1 hold the u and v
/// planes of grid c.
void write_vector_grids(const std::filesystem::path& path, std::span<const VectorGrid> grids);
std::vector<VectorGrid> read_vector_grids(const std::filesystem::path& path);

}  // namespace paf
