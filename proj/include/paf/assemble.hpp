// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "paf/detect.hpp"
#include "paf/skeleton.hpp"

namespace paf {

/// An accepted parent->child candidate pairing for one limb type.
struct LimbMatch {
    int limb = 0;
    int parent_id = 0;
    int child_id = 0;
    double score = 0.0;
};

struct IntegralParams {
    int n_samples = 10;
    double tau_e = 0.05;
    /// Greedy row-max matcher instead of the exact assignment solver.
    bool greedy = false;
};

/// Line-integral association score: mean over n_samples points, equally
/// spaced from a to b inclusive, of the field sampled bilinearly dotted
/// with the unit direction (b-a)/|b-a|. Throws on a == b.
double limb_score(const VectorGrid& field, Vec2 a, Vec2 b, int n_samples);

/// Exact maximum-total matching over a score matrix. Entries below tau or
/// not above 0 never match; each row and column is used at most once. Ties
/// between equal-total matchings resolve toward the lexicographically
/// smallest (row, col) pair sequence. Returns row -> col, -1 for unmatched.
std::vector<int> max_score_assignment(const std::vector<std::vector<double>>& scores, double tau);

/// Scores every parent x child pair, drops entries below tau_e, and returns
/// the matching maximizing total score (each candidate used at most once).
/// Ties resolve toward the lexicographically smallest (parent_id, child_id)
/// sequence. Output sorted by descending score, then ids.
std::vector<LimbMatch> match_limb(std::span<const DetectionCandidate> parents,
                                  std::span<const DetectionCandidate> children,
                                  const VectorGrid& field, int limb,
                                  const IntegralParams& params);

/// A (possibly partial) multi-joint pose.
struct AssembledPose {
    std::vector<std::optional<Vec2>> points;
    std::vector<std::optional<double>> scores;
    std::vector<double> limb_scores;

    int joint_count_present() const;
    double total_score() const;
};

/// Greedy assembly: limbs in skeleton order, matches within a limb by
/// descending score. Matches extend partial poses, merge them, or start new
/// ones; slot conflicts are resolved by score. Poses with fewer than
/// min_joints joints are dropped; output is sorted by descending total
/// score.
std::vector<AssembledPose> assemble_poses(std::span<const DetectionCandidate> candidates,
                                          std::span<const LimbMatch> matches,
                                          const Skeleton& skeleton, int min_joints = 2);

/// Full inference on one field set: detect, match every limb, assemble.
std::vector<AssembledPose> assemble_from_fields(const Skeleton& skeleton,
                                                std::span<const ScalarGrid> confidences,
                                                std::span<const VectorGrid> affinities,
                                                const NmsParams& nms,
                                                const IntegralParams& integral,
                                                int min_joints = 2);

}  // namespace paf
