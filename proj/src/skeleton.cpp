// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#include "paf/skeleton.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "paf/errors.hpp"

namespace paf {

int Skeleton::joint_index(std::string_view joint_name) const {
    for (std::size_t i = 0; i < joints.size(); ++i) {
        if (joints[i] == joint_name) return static_cast<int>(i);
    }
    return -1;
}

void Skeleton::validate() const {
    const int k = joint_count();
    if (k < 1) throw std::invalid_argument("skeleton has no joints");
    if (limb_count() != k - 1) {
        throw std::invalid_argument("skeleton must have exactly K-1 limbs");
    }
    if (root < 0 || root >= k) throw std::invalid_argument("root index out of range");
    if (static_cast<int>(oks_kappa.size()) != k) {
        throw std::invalid_argument("oks_kappa length must match joint count");
    }
    for (double kappa : oks_kappa) {
        if (!(kappa > 0.0)) throw std::invalid_argument("oks_kappa values must be positive");
    }
    std::vector<int> parent(k, -1);
    for (const auto& limb : limbs) {
        if (limb[0] < 0 || limb[0] >= k || limb[1] < 0 || limb[1] >= k) {
            throw std::invalid_argument("limb joint index out of range");
        }
        if (limb[1] == root) throw std::invalid_argument("root joint cannot have a parent");
        if (parent[limb[1]] != -1) {
            throw std::invalid_argument("joint has more than one parent");
        }
        parent[limb[1]] = limb[0];
    }
    // K-1 limbs with unique children and a parentless root reach everything
    // iff walking parents from each joint terminates at the root.
    for (int j = 0; j < k; ++j) {
        int cur = j;
        int hops = 0;
        while (cur != root) {
            cur = parent[cur];
            if (cur < 0 || ++hops > k) {
                throw std::invalid_argument("limbs do not form a tree rooted at root");
            }
        }
    }
}

std::vector<int> bfs_order(const Skeleton& skeleton) {
    const int k = skeleton.joint_count();
    std::vector<std::vector<int>> children(k);
    for (const auto& limb : skeleton.limbs) children[limb[0]].push_back(limb[1]);

    std::vector<int> order;
    order.reserve(k);
    std::queue<int> frontier;
    frontier.push(skeleton.root);
    while (!frontier.empty()) {
        int j = frontier.front();
        frontier.pop();
        order.push_back(j);
        for (int child : children[j]) frontier.push(child);
    }
    return order;
}

namespace {

Skeleton make_coco17() {
    Skeleton s;
    s.name = "coco17";
    s.joints = {"nose",           "left_eye",       "right_eye",     "left_ear",
                "right_ear",      "left_shoulder",  "right_shoulder", "left_elbow",
                "right_elbow",    "left_wrist",     "right_wrist",    "left_hip",
                "right_hip",      "left_knee",      "right_knee",     "left_ankle",
                "right_ankle"};
    s.limbs = {{0, 1},  {0, 2},  {1, 3},  {2, 4},  {0, 5},   {0, 6},
               {5, 7},  {7, 9},  {6, 8},  {8, 10}, {5, 11},  {6, 12},
               {11, 13}, {13, 15}, {12, 14}, {14, 16}};
    s.root = 0;
    // Standard COCO per-keypoint constants, scaled so that
    // oks = exp(-d^2 / (2 * area * kappa^2)) matches the reference metric.
    s.oks_kappa = {0.052, 0.050, 0.050, 0.070, 0.070, 0.158, 0.158, 0.144,
                   0.144, 0.124, 0.124, 0.214, 0.214, 0.174, 0.174, 0.178,
                   0.178};
    return s;
}

Skeleton make_mpii16() {
    Skeleton s;
    s.name = "mpii16";
    s.joints = {"right_ankle", "right_knee",  "right_hip",     "left_hip",
                "left_knee",   "left_ankle",  "pelvis",        "thorax",
                "upper_neck",  "head_top",    "right_wrist",   "right_elbow",
                "right_shoulder", "left_shoulder", "left_elbow", "left_wrist"};
    s.limbs = {{7, 8},  {8, 9},  {7, 12}, {12, 11}, {11, 10}, {7, 13}, {13, 14},
               {14, 15}, {7, 6},  {6, 2},  {2, 1},   {1, 0},   {6, 3},  {3, 4},
               {4, 5}};
    s.root = 7;
    // Nearest COCO analog per joint; neck reuses the nose constant and
    // head top the ear constant.
    s.oks_kappa = {0.178, 0.174, 0.214, 0.214, 0.174, 0.178, 0.214, 0.158,
                   0.052, 0.070, 0.124, 0.144, 0.158, 0.158, 0.144, 0.124};
    return s;
}

}  // namespace

Skeleton skeleton_preset(std::string_view name) {
    if (name == "coco17") return make_coco17();
    if (name == "mpii16") return make_mpii16();
    throw UnknownPresetError("unknown preset: " + std::string(name));
}

}  // namespace paf
