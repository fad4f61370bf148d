// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#include "paf/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paf {

namespace {

// De-facto COCO size buckets.
constexpr double kMediumLo = 32.0 * 32.0;
constexpr double kMediumHi = 96.0 * 96.0;

bool in_filter(double area, SizeFilter filter) {
    switch (filter) {
        case SizeFilter::all: return true;
        case SizeFilter::medium: return area >= kMediumLo && area < kMediumHi;
        case SizeFilter::large: return area >= kMediumHi;
    }
    return true;
}

struct Detection {
    double score;
    bool tp;
};

}  // namespace

double oks(const PersonPose& pred, const PersonPose& gt, double gt_area,
           const Skeleton& skeleton) {
    const int k = skeleton.joint_count();
    if (gt.joint_count() != k || pred.joint_count() != k) {
        throw std::invalid_argument("pose does not match skeleton joint count");
    }
    if (!(gt_area > 0.0)) throw std::invalid_argument("gt_area must be positive");
    int visible = 0;
    double acc = 0.0;
    for (int j = 0; j < k; ++j) {
        if (!gt.visible[j]) continue;
        ++visible;
        if (!pred.visible[j]) continue;  // unpredicted joints contribute 0
        const double d2 = squared_norm(pred.points[j] - gt.points[j]);
        const double kappa = skeleton.oks_kappa[j];
        acc += std::exp(-d2 / (2.0 * gt_area * kappa * kappa));
    }
    if (visible == 0) throw std::invalid_argument("ground truth has no visible joints");
    return acc / visible;
}

std::optional<double> average_precision(std::span<const EvalImage> images,
                                        const Skeleton& skeleton, double threshold,
                                        SizeFilter filter) {
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw std::invalid_argument("threshold must be in (0, 1]");
    }
    int total_gt = 0;
    std::vector<Detection> detections;
    for (const EvalImage& image : images) {
        std::vector<int> gt_idx;
        for (std::size_t g = 0; g < image.gts.size(); ++g) {
            if (in_filter(image.gts[g].area, filter)) gt_idx.push_back(static_cast<int>(g));
        }
        total_gt += static_cast<int>(gt_idx.size());

        // Predictions in descending score order, input order under ties.
        std::vector<int> pred_order(image.preds.size());
        for (std::size_t i = 0; i < pred_order.size(); ++i) pred_order[i] = static_cast<int>(i);
        std::stable_sort(pred_order.begin(), pred_order.end(), [&](int a, int b) {
            return image.preds[a].score > image.preds[b].score;
        });

        std::vector<char> matched(gt_idx.size(), 0);
        for (int p : pred_order) {
            double best = -1.0;
            int best_g = -1;
            for (std::size_t g = 0; g < gt_idx.size(); ++g) {
                if (matched[g]) continue;
                const EvalGroundTruth& gt = image.gts[gt_idx[g]];
                const double s = oks(image.preds[p].pose, gt.pose, gt.area, skeleton);
                if (s > best) {
                    best = s;
                    best_g = static_cast<int>(g);
                }
            }
            const bool tp = best_g >= 0 && best >= threshold;
            if (tp) matched[best_g] = 1;
            detections.push_back({image.preds[p].score, tp});
        }
    }
    if (total_gt == 0) return std::nullopt;
    if (detections.empty()) return 0.0;

    std::stable_sort(detections.begin(), detections.end(),
                     [](const Detection& a, const Detection& b) { return a.score > b.score; });

    // Precision/recall points at each rank, then 101-point interpolation.
    std::vector<double> precision, recall;
    int tp = 0, fp = 0;
    for (const Detection& d : detections) {
        d.tp ? ++tp : ++fp;
        precision.push_back(static_cast<double>(tp) / (tp + fp));
        recall.push_back(static_cast<double>(tp) / total_gt);
    }
    // Precision envelope from the right.
    for (int i = static_cast<int>(precision.size()) - 2; i >= 0; --i) {
        precision[i] = std::max(precision[i], precision[i + 1]);
    }
    double ap_sum = 0.0;
    for (int r = 0; r <= 100; ++r) {
        const double target = static_cast<double>(r) / 100.0;
        const auto it = std::lower_bound(recall.begin(), recall.end(), target);
        if (it != recall.end()) ap_sum += precision[it - recall.begin()];
    }
    return ap_sum / 101.0;
}

std::optional<std::pair<int, int>> head_segment(const Skeleton& skeleton) {
    const int top = skeleton.joint_index("head_top");
    const int neck = skeleton.joint_index("upper_neck");
    if (top < 0 || neck < 0) return std::nullopt;
    return std::make_pair(top, neck);
}

std::optional<double> pckh(std::span<const EvalImage> images, const Skeleton& skeleton) {
    const auto segment = head_segment(skeleton);
    if (!segment) return std::nullopt;
    const auto [head_top, upper_neck] = *segment;

    int total_joints = 0;
    int correct_joints = 0;
    for (const EvalImage& image : images) {
        // Greedy pred-to-GT matching by best OKS, predictions in score order.
        std::vector<int> pred_order(image.preds.size());
        for (std::size_t i = 0; i < pred_order.size(); ++i) pred_order[i] = static_cast<int>(i);
        std::stable_sort(pred_order.begin(), pred_order.end(), [&](int a, int b) {
            return image.preds[a].score > image.preds[b].score;
        });
        std::vector<int> match_of_gt(image.gts.size(), -1);
        std::vector<char> matched(image.gts.size(), 0);
        for (int p : pred_order) {
            double best = 0.0;
            int best_g = -1;
            for (std::size_t g = 0; g < image.gts.size(); ++g) {
                if (matched[g]) continue;
                const double s =
                    oks(image.preds[p].pose, image.gts[g].pose, image.gts[g].area, skeleton);
                if (s > best) {
                    best = s;
                    best_g = static_cast<int>(g);
                }
            }
            if (best_g >= 0) {
                matched[best_g] = 1;
                match_of_gt[best_g] = p;
            }
        }

        for (std::size_t g = 0; g < image.gts.size(); ++g) {
            const PersonPose& gt = image.gts[g].pose;
            if (!gt.visible[head_top] || !gt.visible[upper_neck]) continue;
            const double radius = 0.5 * norm(gt.points[head_top] - gt.points[upper_neck]);
            const int p = match_of_gt[g];
            for (int j = 0; j < skeleton.joint_count(); ++j) {
                if (!gt.visible[j]) continue;
                ++total_joints;
                if (p < 0) continue;
                const PersonPose& pred = image.preds[p].pose;
                if (!pred.visible[j]) continue;
                if (norm(pred.points[j] - gt.points[j]) <= radius) ++correct_joints;
            }
        }
    }
    if (total_joints == 0) return std::nullopt;
    return static_cast<double>(correct_joints) / total_joints;
}

MetricReport metric_report(std::span<const EvalImage> images, const Skeleton& skeleton) {
    MetricReport report;
    double ap_sum = 0.0;
    double apm_sum = 0.0, apl_sum = 0.0;
    bool have_m = true, have_l = true;
    for (int t = 0; t < 10; ++t) {
        const double threshold = 0.50 + 0.05 * t;
        const double ap_t = average_precision(images, skeleton, threshold, SizeFilter::all)
                                .value_or(0.0);
        report.per_threshold.emplace_back(threshold, ap_t);
        ap_sum += ap_t;

        const auto apm_t = average_precision(images, skeleton, threshold, SizeFilter::medium);
        const auto apl_t = average_precision(images, skeleton, threshold, SizeFilter::large);
        if (apm_t) apm_sum += *apm_t; else have_m = false;
        if (apl_t) apl_sum += *apl_t; else have_l = false;
    }
    report.ap = ap_sum / 10.0;
    report.ap50 = report.per_threshold[0].second;
    report.ap75 = report.per_threshold[5].second;
    if (have_m) report.ap_medium = apm_sum / 10.0;
    if (have_l) report.ap_large = apl_sum / 10.0;
    report.pckh = pckh(images, skeleton);
    return report;
}

}  // namespace paf
