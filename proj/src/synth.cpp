// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#include "paf/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "paf/kernels/kernels.hpp"

namespace paf {

namespace {

void check_people(const Skeleton& skeleton, std::span<const PersonPose> people) {
    const std::size_t k = static_cast<std::size_t>(skeleton.joint_count());
    for (const PersonPose& person : people) {
        if (person.points.size() != k || person.visible.size() != k) {
            throw std::invalid_argument("pose does not match skeleton joint count");
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (person.visible[j] &&
                (!std::isfinite(person.points[j].x) || !std::isfinite(person.points[j].y))) {
                throw std::invalid_argument("visible joint has non-finite coordinates");
            }
        }
    }
}

struct PixelWindow {
    int x0, x1, y0, y1;  // inclusive
    bool empty() const { return x0 > x1 || y0 > y1; }
};

PixelWindow clip_window(double lo_x, double hi_x, double lo_y, double hi_y, int width,
                        int height) {
    PixelWindow w;
    w.x0 = std::max(0, static_cast<int>(std::ceil(lo_x)));
    w.x1 = std::min(width - 1, static_cast<int>(std::floor(hi_x)));
    w.y0 = std::max(0, static_cast<int>(std::ceil(lo_y)));
    w.y1 = std::min(height - 1, static_cast<int>(std::floor(hi_y)));
    return w;
}

}  // namespace

ScalarGrid confidence_map(const Skeleton& skeleton, std::span<const PersonPose> people, int joint,
                          const SynthParams& params, int width, int height) {
    if (joint < 0 || joint >= skeleton.joint_count()) {
        throw std::invalid_argument("joint index out of range");
    }
    if (!(params.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    check_people(skeleton, people);

    ScalarGrid grid(width, height, 0.0f);
    const auto& ops = kernels::active_ops();
    const float inv_sigma_sq = static_cast<float>(1.0 / (params.sigma * params.sigma));
    // Radius beyond which the kernel's argument cut zeroes everything.
    const double radius = params.sigma * std::sqrt(static_cast<double>(kernels::kGaussArgCut)) + 1.0;

    for (const PersonPose& person : people) {
        if (!person.visible[joint]) continue;
        const Vec2 x0 = person.points[joint];
        const PixelWindow w =
            clip_window(x0.x - radius, x0.x + radius, x0.y - radius, x0.y + radius, width, height);
        if (w.empty()) continue;
        for (int y = w.y0; y <= w.y1; ++y) {
            const float dy = static_cast<float>(static_cast<double>(y) - x0.y);
            const float x_rel0 = static_cast<float>(static_cast<double>(w.x0) - x0.x);
            ops.gaussian_row_max(grid.row(y) + w.x0, w.x1 - w.x0 + 1, x_rel0, dy * dy,
                                 inv_sigma_sq);
        }
    }
    return grid;
}

VectorGrid paf_map(const Skeleton& skeleton, std::span<const PersonPose> people, int limb,
                   const SynthParams& params, int width, int height) {
    if (limb < 0 || limb >= skeleton.limb_count()) {
        throw std::invalid_argument("limb index out of range");
    }
    if (!(params.sigma_l > 0.0)) throw std::invalid_argument("sigma_l must be positive");
    check_people(skeleton, people);

    const std::size_t n_px = static_cast<std::size_t>(width) * height;
    std::vector<float> sum_u(n_px, 0.0f), sum_v(n_px, 0.0f), count(n_px, 0.0f);
    const auto& ops = kernels::active_ops();
    const int j1 = skeleton.limbs[limb][0];
    const int j2 = skeleton.limbs[limb][1];
    const double pad = params.sigma_l + 1.0;

    for (const PersonPose& person : people) {
        if (!person.visible[j1] || !person.visible[j2]) continue;
        const Vec2 a = person.points[j1];
        const Vec2 b = person.points[j2];
        const double len = norm(b - a);
        if (len < 1e-9) continue;  // coincident endpoints: direction undefined
        const float vx = static_cast<float>((b.x - a.x) / len);
        const float vy = static_cast<float>((b.y - a.y) / len);
        const PixelWindow w =
            clip_window(std::min(a.x, b.x) - pad, std::max(a.x, b.x) + pad,
                        std::min(a.y, b.y) - pad, std::max(a.y, b.y) + pad, width, height);
        if (w.empty()) continue;
        for (int y = w.y0; y <= w.y1; ++y) {
            const std::size_t row = static_cast<std::size_t>(y) * width + w.x0;
            ops.paf_row_accum(sum_u.data() + row, sum_v.data() + row, count.data() + row,
                              w.x1 - w.x0 + 1,
                              static_cast<float>(static_cast<double>(w.x0) - a.x),
                              static_cast<float>(static_cast<double>(y) - a.y),
                              static_cast<float>(b.x - a.x), static_cast<float>(b.y - a.y),
                              static_cast<float>(squared_norm(b - a)),
                              static_cast<float>(params.sigma_l * len), vx, vy);
        }
    }

    VectorGrid grid(width, height);
    float* out = grid.data();
    for (std::size_t i = 0; i < n_px; ++i) {
        if (count[i] > 0.0f) {
            out[2 * i] = sum_u[i] / count[i];
            out[2 * i + 1] = sum_v[i] / count[i];
        }
    }
    return grid;
}

ScalarGrid annotation_mask(const Skeleton& skeleton, std::span<const PersonPose> people,
                           const SynthParams& params, int width, int height) {
    check_people(skeleton, people);
    ScalarGrid grid(width, height, 0.0f);
    const double sigma = params.sigma;
    const double sigma_l = params.sigma_l;
    const double sigma_sq = sigma * sigma;

    for (const PersonPose& person : people) {
        // Limb bands dilated by sigma (rounded rectangles).
        for (const auto& limb : skeleton.limbs) {
            if (!person.visible[limb[0]] || !person.visible[limb[1]]) continue;
            const Vec2 a = person.points[limb[0]];
            const Vec2 b = person.points[limb[1]];
            const double len = norm(b - a);
            if (len < 1e-9) continue;
            const Vec2 v = (1.0 / len) * (b - a);
            const double pad = sigma_l + sigma + 1.0;
            const PixelWindow w =
                clip_window(std::min(a.x, b.x) - pad, std::max(a.x, b.x) + pad,
                            std::min(a.y, b.y) - pad, std::max(a.y, b.y) + pad, width, height);
            for (int y = w.y0; y <= w.y1; ++y) {
                for (int x = w.x0; x <= w.x1; ++x) {
                    const Vec2 d = Vec2{static_cast<double>(x), static_cast<double>(y)} - a;
                    const double along = dot(v, d);
                    const double lateral = dot(perp(v), d);
                    const double d_along = std::max({-along, along - len, 0.0});
                    const double d_lat = std::max(std::fabs(lateral) - sigma_l, 0.0);
                    if (d_along * d_along + d_lat * d_lat <= sigma_sq) grid.at(x, y) = 1.0f;
                }
            }
        }
        // Disks at visible joints.
        for (int j = 0; j < skeleton.joint_count(); ++j) {
            if (!person.visible[j]) continue;
            const Vec2 c = person.points[j];
            const PixelWindow w = clip_window(c.x - sigma - 1.0, c.x + sigma + 1.0,
                                              c.y - sigma - 1.0, c.y + sigma + 1.0, width, height);
            for (int y = w.y0; y <= w.y1; ++y) {
                for (int x = w.x0; x <= w.x1; ++x) {
                    const Vec2 d = Vec2{static_cast<double>(x), static_cast<double>(y)} - c;
                    if (squared_norm(d) <= sigma_sq) grid.at(x, y) = 1.0f;
                }
            }
        }
    }
    return grid;
}

double field_loss(const ScalarGrid& pred, const ScalarGrid& gt, const ScalarGrid& mask) {
    if (pred.width() != gt.width() || pred.height() != gt.height() ||
        pred.width() != mask.width() || pred.height() != mask.height()) {
        throw std::invalid_argument("field_loss dimension mismatch");
    }
    return kernels::active_ops().masked_sse(pred.data(), gt.data(), mask.data(),
                                            static_cast<int>(pred.size()));
}

double field_loss(const VectorGrid& pred, const VectorGrid& gt, const ScalarGrid& mask) {
    if (pred.width() != gt.width() || pred.height() != gt.height() ||
        pred.width() != mask.width() || pred.height() != mask.height()) {
        throw std::invalid_argument("field_loss dimension mismatch");
    }
    return kernels::active_ops().masked_sse_uv(pred.data(), gt.data(), mask.data(),
                                               pred.width() * pred.height());
}

FieldSet synthesize_fields(const Skeleton& skeleton, std::span<const PersonPose> people,
                           const SynthParams& params, int width, int height) {
    FieldSet fields;
    fields.skeleton = skeleton;
    fields.confidences.reserve(skeleton.joint_count());
    for (int j = 0; j < skeleton.joint_count(); ++j) {
        fields.confidences.push_back(confidence_map(skeleton, people, j, params, width, height));
    }
    fields.affinities.reserve(skeleton.limb_count());
    for (int c = 0; c < skeleton.limb_count(); ++c) {
        fields.affinities.push_back(paf_map(skeleton, people, c, params, width, height));
    }
    fields.mask = annotation_mask(skeleton, people, params, width, height);
    return fields;
}

namespace {

// Platform-independent uniform helpers on top of mt19937_64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    bool bernoulli(double p) { return uniform(0.0, 1.0) < p; }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 gen_;
};

struct Template {
    std::vector<Vec2> points;  // unit-frame coordinates, indexed by joint
};

Template pose_template(const Skeleton& skeleton) {
    Template t;
    if (skeleton.name == "coco17") {
        t.points = {{0.50, 0.14}, {0.62, 0.04}, {0.38, 0.04}, {0.74, 0.12}, {0.26, 0.12},
                    {0.66, 0.30}, {0.34, 0.30}, {0.82, 0.36}, {0.18, 0.36}, {0.86, 0.52},
                    {0.14, 0.52}, {0.60, 0.56}, {0.40, 0.56}, {0.76, 0.68}, {0.24, 0.68},
                    {0.72, 0.88}, {0.28, 0.88}};
    } else if (skeleton.name == "mpii16") {
        t.points = {{0.28, 0.88}, {0.24, 0.68}, {0.40, 0.56}, {0.60, 0.56}, {0.76, 0.68},
                    {0.72, 0.88}, {0.50, 0.54}, {0.50, 0.28}, {0.48, 0.16}, {0.56, 0.04},
                    {0.14, 0.54}, {0.18, 0.38}, {0.34, 0.30}, {0.66, 0.30}, {0.82, 0.38},
                    {0.86, 0.54}};
    } else {
        throw std::invalid_argument("no pose template for skeleton: " + skeleton.name);
    }
    return t;
}

struct Placed {
    std::vector<Vec2> points;
    Vec2 lo, hi;  // bbox
};

bool boxes_disjoint(const Placed& a, const Placed& b) {
    return a.hi.x < b.lo.x || b.hi.x < a.lo.x || a.hi.y < b.lo.y || b.hi.y < a.lo.y;
}

bool boxes_overlap(const Placed& a, const Placed& b) { return !boxes_disjoint(a, b); }

}  // namespace

std::vector<PersonPose> scene_fixture(std::uint64_t seed, int n_people, const Skeleton& skeleton,
                                      const SceneBounds& bounds, double occlusion_level,
                                      const SynthParams& params, const FixtureOptions& options) {
    if (n_people < 0) throw std::invalid_argument("n_people must be non-negative");
    if (occlusion_level < 0.0 || occlusion_level > 1.0) {
        throw std::invalid_argument("occlusion_level must be in [0, 1]");
    }
    skeleton.validate();

    std::vector<PersonPose> people;
    if (n_people == 0) return people;

    Rng rng(seed);
    const Template tmpl = pose_template(skeleton);
    const int k = skeleton.joint_count();
    // Same-joint separation: the full 4*sigma guarantee only applies to
    // non-occluded scenes; overlapping scenes just avoid near-coincidence.
    double min_sep = options.min_separation;
    if (min_sep <= 0.0) min_sep = occlusion_level == 0.0 ? 4.0 * params.sigma : 3.0;
    const double usable_w = bounds.width - 2.0 * bounds.margin;
    const double usable_h = bounds.height - 2.0 * bounds.margin;
    if (usable_w <= 0.0 || usable_h <= 0.0) throw std::invalid_argument("bounds too small");
    const double base = std::min(usable_w, usable_h);

    double scale_hi = base;
    if (n_people == 2) scale_hi = 0.80 * base;
    if (n_people == 3) scale_hi = 0.62 * base;
    if (n_people >= 4) scale_hi = 0.50 * base;

    std::vector<Placed> placed;
    for (int person_idx = 0; person_idx < n_people; ++person_idx) {
        bool committed = false;
        double shrink = 1.0;
        for (int attempt = 0; attempt < options.max_retries; ++attempt) {
            if (attempt > 0 && attempt % 200 == 0) shrink *= 0.85;
            const double s = rng.uniform(0.70, 1.0) * scale_hi * shrink;
            const double theta = rng.uniform(-15.0, 15.0) * (3.14159265358979323846 / 180.0);
            const double ct = std::cos(theta), st = std::sin(theta);

            Placed cand;
            cand.points.resize(k);
            Vec2 lo{1e30, 1e30}, hi{-1e30, -1e30};
            for (int j = 0; j < k; ++j) {
                const Vec2 c = tmpl.points[j] - Vec2{0.5, 0.5};
                Vec2 p{s * (ct * c.x - st * c.y), s * (st * c.x + ct * c.y)};
                cand.points[j] = p;
                lo.x = std::min(lo.x, p.x);
                lo.y = std::min(lo.y, p.y);
                hi.x = std::max(hi.x, p.x);
                hi.y = std::max(hi.y, p.y);
            }
            const double bw = hi.x - lo.x, bh = hi.y - lo.y;
            if (bw > usable_w || bh > usable_h) continue;

            Vec2 shift;
            const bool force_overlap =
                occlusion_level > 0.0 && !placed.empty() && rng.bernoulli(occlusion_level);
            if (force_overlap) {
                // Aim near a previously placed person so the boxes overlap.
                const Placed& other = placed[static_cast<std::size_t>(
                    rng.uniform_int(0, static_cast<int>(placed.size()) - 1))];
                const Vec2 target{(other.lo.x + other.hi.x) / 2 + rng.uniform(-bw / 2, bw / 2),
                                  (other.lo.y + other.hi.y) / 2 + rng.uniform(-bh / 2, bh / 2)};
                shift = {std::clamp(target.x, bounds.margin - lo.x,
                                    bounds.width - bounds.margin - hi.x),
                         std::clamp(target.y, bounds.margin - lo.y,
                                    bounds.height - bounds.margin - hi.y)};
            } else {
                shift = {rng.uniform(bounds.margin - lo.x, bounds.width - bounds.margin - hi.x),
                         rng.uniform(bounds.margin - lo.y, bounds.height - bounds.margin - hi.y)};
            }
            for (Vec2& p : cand.points) p = p + shift;
            cand.lo = lo + shift;
            cand.hi = hi + shift;
            if (options.snap_to_pixels) {
                Vec2 snapped_lo{1e30, 1e30}, snapped_hi{-1e30, -1e30};
                for (Vec2& p : cand.points) {
                    p = {std::round(p.x), std::round(p.y)};
                    snapped_lo.x = std::min(snapped_lo.x, p.x);
                    snapped_lo.y = std::min(snapped_lo.y, p.y);
                    snapped_hi.x = std::max(snapped_hi.x, p.x);
                    snapped_hi.y = std::max(snapped_hi.y, p.y);
                }
                cand.lo = snapped_lo;
                cand.hi = snapped_hi;
            }

            bool ok = true;
            for (const Placed& other : placed) {
                if (occlusion_level == 0.0 && boxes_overlap(cand, other)) {
                    ok = false;
                    break;
                }
                for (int j = 0; j < k && ok; ++j) {
                    if (norm(cand.points[j] - other.points[j]) < min_sep) ok = false;
                }
                if (!ok) break;
            }
            if (!ok) continue;

            placed.push_back(std::move(cand));
            committed = true;
            break;
        }
        if (!committed) {
            throw std::runtime_error("scene placement infeasible after bounded retries");
        }
    }

    for (const Placed& p : placed) {
        PersonPose pose;
        pose.points = p.points;
        pose.visible.assign(k, true);
        if (occlusion_level > 0.0) {
            // Hide joints at a rate tied to the occlusion level, keeping at
            // least three visible so the person stays assemblable.
            for (int j = 0; j < k; ++j) {
                if (rng.bernoulli(0.35 * occlusion_level)) pose.visible[j] = false;
            }
            int vis = pose.visible_count();
            for (int j = 0; vis < 3 && j < k; ++j) {
                if (!pose.visible[j]) {
                    pose.visible[j] = true;
                    ++vis;
                }
            }
        }
        people.push_back(std::move(pose));
    }
    return people;
}

}  // namespace paf
