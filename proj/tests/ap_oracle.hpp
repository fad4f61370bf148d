// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

// Test-only reference evaluator. Written independently of paf::eval:
// straightforward exhaustive loops, long-double accumulation, no shared
// helpers, so it can serve as the oracle for the metric suite.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "paf/eval.hpp"

namespace ap_oracle {

inline double oks_ref(const paf::PersonPose& pred, const paf::PersonPose& gt, double area,
                      const paf::Skeleton& skeleton) {
    long double sum = 0.0L;
    int visible = 0;
    for (int j = 0; j < skeleton.joint_count(); ++j) {
        if (!gt.visible[j]) continue;
        ++visible;
        if (!pred.visible[j]) continue;
        const long double dx = pred.points[j].x - gt.points[j].x;
        const long double dy = pred.points[j].y - gt.points[j].y;
        const long double kappa = skeleton.oks_kappa[j];
        sum += std::exp(static_cast<long double>(-(dx * dx + dy * dy) /
                                                 (2.0L * area * kappa * kappa)));
    }
    return static_cast<double>(sum / visible);
}

inline bool in_bucket_ref(double area, paf::SizeFilter filter) {
    if (filter == paf::SizeFilter::medium) return area >= 1024.0 && area < 9216.0;
    if (filter == paf::SizeFilter::large) return area >= 9216.0;
    return true;
}

/// Exhaustive 101-point PR-curve AP. Returns nullopt when the filter keeps
/// no ground truth.
inline std::optional<double> ap_ref(const std::vector<paf::EvalImage>& images,
                                    const paf::Skeleton& skeleton, double threshold,
                                    paf::SizeFilter filter) {
    struct Det {
        double score;
        int tp;
        int order;
    };
    std::vector<Det> dets;
    int n_gt = 0;
    int order = 0;
    for (const paf::EvalImage& image : images) {
        std::vector<int> kept;
        for (std::size_t g = 0; g < image.gts.size(); ++g) {
            if (in_bucket_ref(image.gts[g].area, filter)) kept.push_back(static_cast<int>(g));
        }
        n_gt += static_cast<int>(kept.size());

        std::vector<int> order_in_image(image.preds.size());
        for (std::size_t i = 0; i < order_in_image.size(); ++i) {
            order_in_image[i] = static_cast<int>(i);
        }
        std::stable_sort(order_in_image.begin(), order_in_image.end(), [&](int a, int b) {
            return image.preds[a].score > image.preds[b].score;
        });
        std::vector<bool> taken(kept.size(), false);
        for (int p : order_in_image) {
            double best_oks = -1.0;
            int best = -1;
            for (std::size_t g = 0; g < kept.size(); ++g) {
                if (taken[g]) continue;
                const double s = oks_ref(image.preds[p].pose, image.gts[kept[g]].pose,
                                         image.gts[kept[g]].area, skeleton);
                if (s > best_oks) {
                    best_oks = s;
                    best = static_cast<int>(g);
                }
            }
            const bool tp = best >= 0 && best_oks >= threshold;
            if (tp) taken[best] = true;
            dets.push_back({image.preds[p].score, tp ? 1 : 0, order++});
        }
    }
    if (n_gt == 0) return std::nullopt;
    if (dets.empty()) return 0.0;

    std::sort(dets.begin(), dets.end(), [](const Det& a, const Det& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.order < b.order;
    });
    std::vector<double> precision, recall;
    int tp = 0, fp = 0;
    for (const Det& d : dets) {
        d.tp ? ++tp : ++fp;
        precision.push_back(static_cast<double>(tp) / (tp + fp));
        recall.push_back(static_cast<double>(tp) / n_gt);
    }
    long double total = 0.0L;
    for (int r = 0; r <= 100; ++r) {
        const double want = r / 100.0;
        double best = 0.0;
        for (std::size_t i = 0; i < precision.size(); ++i) {
            if (recall[i] >= want) best = std::max(best, precision[i]);
        }
        total += best;
    }
    return static_cast<double>(total / 101.0L);
}

inline std::optional<double> pckh_ref(const std::vector<paf::EvalImage>& images,
                                      const paf::Skeleton& skeleton) {
    const int head_top = skeleton.joint_index("head_top");
    const int neck = skeleton.joint_index("upper_neck");
    if (head_top < 0 || neck < 0) return std::nullopt;
    int total = 0, correct = 0;
    for (const paf::EvalImage& image : images) {
        std::vector<int> order_in_image(image.preds.size());
        for (std::size_t i = 0; i < order_in_image.size(); ++i) {
            order_in_image[i] = static_cast<int>(i);
        }
        std::stable_sort(order_in_image.begin(), order_in_image.end(), [&](int a, int b) {
            return image.preds[a].score > image.preds[b].score;
        });
        std::vector<int> match(image.gts.size(), -1);
        std::vector<bool> taken(image.gts.size(), false);
        for (int p : order_in_image) {
            double best_oks = 0.0;
            int best = -1;
            for (std::size_t g = 0; g < image.gts.size(); ++g) {
                if (taken[g]) continue;
                const double s = oks_ref(image.preds[p].pose, image.gts[g].pose,
                                         image.gts[g].area, skeleton);
                if (s > best_oks) {
                    best_oks = s;
                    best = static_cast<int>(g);
                }
            }
            if (best >= 0) {
                taken[best] = true;
                match[best] = p;
            }
        }
        for (std::size_t g = 0; g < image.gts.size(); ++g) {
            const paf::PersonPose& gt = image.gts[g].pose;
            if (!gt.visible[head_top] || !gt.visible[neck]) continue;
            const double hx = gt.points[head_top].x - gt.points[neck].x;
            const double hy = gt.points[head_top].y - gt.points[neck].y;
            const double radius = 0.5 * std::sqrt(hx * hx + hy * hy);
            for (int j = 0; j < skeleton.joint_count(); ++j) {
                if (!gt.visible[j]) continue;
                ++total;
                if (match[g] < 0) continue;
                const paf::PersonPose& pred = image.preds[match[g]].pose;
                if (!pred.visible[j]) continue;
                const double dx = pred.points[j].x - gt.points[j].x;
                const double dy = pred.points[j].y - gt.points[j].y;
                if (std::sqrt(dx * dx + dy * dy) <= radius) ++correct;
            }
        }
    }
    if (total == 0) return std::nullopt;
    return static_cast<double>(correct) / total;
}

struct ReportRef {
    double ap, ap50, ap75;
    std::optional<double> ap_medium, ap_large, pckh;
};

inline ReportRef report_ref(const std::vector<paf::EvalImage>& images,
                            const paf::Skeleton& skeleton) {
    ReportRef r{0.0, 0.0, 0.0, std::nullopt, std::nullopt, std::nullopt};
    double sum = 0.0, sum_m = 0.0, sum_l = 0.0;
    bool have_m = true, have_l = true;
    for (int i = 0; i < 10; ++i) {
        const double t = 0.50 + 0.05 * i;
        const double ap_t = ap_ref(images, skeleton, t, paf::SizeFilter::all).value_or(0.0);
        sum += ap_t;
        if (i == 0) r.ap50 = ap_t;
        if (i == 5) r.ap75 = ap_t;
        const auto m = ap_ref(images, skeleton, t, paf::SizeFilter::medium);
        const auto l = ap_ref(images, skeleton, t, paf::SizeFilter::large);
        if (m) sum_m += *m; else have_m = false;
        if (l) sum_l += *l; else have_l = false;
    }
    r.ap = sum / 10.0;
    if (have_m) r.ap_medium = sum_m / 10.0;
    if (have_l) r.ap_large = sum_l / 10.0;
    r.pckh = pckh_ref(images, skeleton);
    return r;
}

}  // namespace ap_oracle
