// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "paf/json_io.hpp"

namespace paf {

// Fixture bundle directory layout:
//   scene.json  poses, parameters and seed
//   S.paft      K confidence channels
//   L.paft      2C affinity channels (u/v planes per limb)
//   W.paft      1 mask channel

struct Bundle {
    Scene scene;
    FieldSet fields;
};

/// Writes scene.json plus the three tensors; creates the directory.
void write_bundle(const std::filesystem::path& dir, const Scene& scene, const FieldSet& fields);

/// Reads and cross-checks a bundle. Throws IoError when the directory is
/// missing, BundleError for unreadable or malformed contents, and
/// SkeletonMismatchError when tensor channel counts disagree with the
/// scene's skeleton.
Bundle read_bundle(const std::filesystem::path& dir);

}  // namespace paf
