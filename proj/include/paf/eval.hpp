// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "paf/pose.hpp"

namespace paf {

/// One scored predicted pose.
struct EvalPrediction {
    PersonPose pose;
    double score = 0.0;
};

/// One annotated pose with its person scale.
struct EvalGroundTruth {
    PersonPose pose;
    double area = 0.0;  // squared pixels
};

struct EvalImage {
    std::vector<EvalPrediction> preds;
    std::vector<EvalGroundTruth> gts;
};

enum class SizeFilter { all, medium, large };

/// Object keypoint similarity: mean over visible GT joints of
/// exp(-d^2 / (2 * area * kappa^2)); joints the prediction lacks count 0.
double oks(const PersonPose& pred, const PersonPose& gt, double gt_area,
           const Skeleton& skeleton);

/// OKS-thresholded average precision with greedy score-ordered matching
/// and 101-point PR interpolation. Returns nullopt when the size filter
/// leaves no ground truth.
std::optional<double> average_precision(std::span<const EvalImage> images,
                                        const Skeleton& skeleton, double threshold,
                                        SizeFilter filter);

struct MetricReport {
    double ap = 0.0;
    double ap50 = 0.0;
    double ap75 = 0.0;
    std::optional<double> ap_medium;
    std::optional<double> ap_large;
    std::optional<double> pckh;
    std::vector<std::pair<double, double>> per_threshold;
};

/// The head segment used by PCKh, when the skeleton defines one
/// (joints named "head_top" and "upper_neck").
std::optional<std::pair<int, int>> head_segment(const Skeleton& skeleton);

/// Head-normalized percentage of correct keypoints at radius
/// 0.5 * head segment length; GT people without a visible head segment are
/// excluded. Returns nullopt when the skeleton has no head segment or
/// nothing participates.
std::optional<double> pckh(std::span<const EvalImage> images, const Skeleton& skeleton);

/// AP averaged over thresholds 0.50:0.05:0.95 plus the fixed-threshold and
/// size-filtered variants, and PCKh for skeletons with a head segment.
MetricReport metric_report(std::span<const EvalImage> images, const Skeleton& skeleton);

}  // namespace paf
