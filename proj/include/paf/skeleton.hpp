// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace paf {

/// Directed tree of named joints. Limbs are (parent, child) joint-index
/// pairs; with K joints there are exactly K-1 limbs. Immutable after
/// construction, safe to share across threads.
struct Skeleton {
    std::string name;
    std::vector<std::string> joints;
    std::vector<std::array<int, 2>> limbs;
    int root = 0;
    std::vector<double> oks_kappa;

    int joint_count() const { return static_cast<int>(joints.size()); }
    int limb_count() const { return static_cast<int>(limbs.size()); }

    /// Index of a joint by name, -1 when absent.
    int joint_index(std::string_view joint_name) const;

    /// Throws std::invalid_argument when any structural invariant is broken
    /// (not a tree, index out of range, non-positive kappa, size mismatch).
    void validate() const;
};

/// Canonical skeletons. Supported names: "coco17", "mpii16".
/// Throws UnknownPresetError otherwise. The same definitions are kept as
/// JSON files under data/skeletons/ for reference.
Skeleton skeleton_preset(std::string_view name);

/// Breadth-first joint order starting at the root. Children of equal depth
/// follow limb declaration order, so the result is deterministic.
std::vector<int> bfs_order(const Skeleton& skeleton);

}  // namespace paf
