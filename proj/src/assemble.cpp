// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#include "paf/assemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace paf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Exact min-cost perfect assignment on a square matrix (potential-based
// augmenting paths, O(n^3)).
std::vector<int> solve_assignment_min(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, kInf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = kInf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; ++j) {
        if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
    }
    return row_to_col;
}

// Maximum total weight over partial matchings of the bipartite graph whose
// edges carry weight[i][j] > 0 (absent edges are 0): solved as a square
// assignment padded with zero columns/rows.
double best_partial_matching(const std::vector<std::vector<double>>& weight,
                             std::vector<int>* row_to_col = nullptr) {
    const int rows = static_cast<int>(weight.size());
    const int cols = rows > 0 ? static_cast<int>(weight[0].size()) : 0;
    const int n = std::max(rows, cols);
    if (n == 0) {
        if (row_to_col) row_to_col->clear();
        return 0.0;
    }
    std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) cost[i][j] = -weight[i][j];
    }
    const std::vector<int> assignment = solve_assignment_min(cost);
    double total = 0.0;
    if (row_to_col) row_to_col->assign(rows, -1);
    for (int i = 0; i < rows; ++i) {
        const int j = assignment[i];
        if (j >= 0 && j < cols && weight[i][j] > 0.0) {
            total += weight[i][j];
            if (row_to_col) (*row_to_col)[i] = j;
        }
    }
    return total;
}

// Best total over matchings that honor forced pairs and excluded rows.
double best_with_forced(const std::vector<std::vector<double>>& weight,
                        const std::vector<int>& forced_row_to_col,
                        const std::vector<char>& row_excluded) {
    const int rows = static_cast<int>(weight.size());
    const int cols = rows > 0 ? static_cast<int>(weight[0].size()) : 0;
    std::vector<char> col_used(cols, 0);
    double forced_total = 0.0;
    std::vector<int> free_rows;
    for (int i = 0; i < rows; ++i) {
        if (forced_row_to_col[i] >= 0) {
            forced_total += weight[i][forced_row_to_col[i]];
            col_used[forced_row_to_col[i]] = 1;
        } else if (!row_excluded[i]) {
            free_rows.push_back(i);
        }
    }
    std::vector<int> free_cols;
    for (int j = 0; j < cols; ++j) {
        if (!col_used[j]) free_cols.push_back(j);
    }
    std::vector<std::vector<double>> reduced(free_rows.size(),
                                             std::vector<double>(free_cols.size(), 0.0));
    for (std::size_t a = 0; a < free_rows.size(); ++a) {
        for (std::size_t b = 0; b < free_cols.size(); ++b) {
            reduced[a][b] = weight[free_rows[a]][free_cols[b]];
        }
    }
    return forced_total + best_partial_matching(reduced);
}

}  // namespace

double limb_score(const VectorGrid& field, Vec2 a, Vec2 b, int n_samples) {
    if (n_samples < 2) throw std::invalid_argument("n_samples must be at least 2");
    if (a.x == b.x && a.y == b.y) throw std::invalid_argument("degenerate candidate pair");
    const Vec2 d = b - a;
    const double len = norm(d);
    const Vec2 dir = (1.0 / len) * d;
    double acc = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const double u = static_cast<double>(i) / (n_samples - 1);
        acc += dot(field.sample(a + u * d), dir);
    }
    return acc / n_samples;
}

std::vector<int> max_score_assignment(const std::vector<std::vector<double>>& scores,
                                      double tau) {
    const int rows = static_cast<int>(scores.size());
    const int cols = rows > 0 ? static_cast<int>(scores[0].size()) : 0;
    std::vector<std::vector<double>> weight(rows, std::vector<double>(cols, 0.0));
    std::vector<std::vector<char>> has_edge(rows, std::vector<char>(cols, 0));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            if (scores[i][j] >= tau && scores[i][j] > 0.0) {
                weight[i][j] = scores[i][j];
                has_edge[i][j] = 1;
            }
        }
    }

    const double optimum = best_partial_matching(weight);
    // Lexicographic tie refinement: fix rows in order to their smallest
    // column that preserves the optimal total.
    const double tie_eps = 1e-12 * (1.0 + std::fabs(optimum));
    std::vector<int> forced(rows, -1);
    std::vector<char> excluded(rows, 0);
    std::vector<char> col_taken(cols, 0);
    for (int i = 0; i < rows; ++i) {
        bool fixed = false;
        for (int j = 0; j < cols && !fixed; ++j) {
            if (!has_edge[i][j] || col_taken[j]) continue;
            forced[i] = j;
            if (best_with_forced(weight, forced, excluded) >= optimum - tie_eps) {
                col_taken[j] = 1;
                fixed = true;
            } else {
                forced[i] = -1;
            }
        }
        if (!fixed) excluded[i] = 1;
    }
    return forced;
}

std::vector<LimbMatch> match_limb(std::span<const DetectionCandidate> parents,
                                  std::span<const DetectionCandidate> children,
                                  const VectorGrid& field, int limb,
                                  const IntegralParams& params) {
    const int np = static_cast<int>(parents.size());
    const int nc = static_cast<int>(children.size());
    std::vector<LimbMatch> matches;
    if (np == 0 || nc == 0) return matches;

    // Rows and columns in ascending candidate-id order so the matcher's
    // lexicographic tie rule reads as (parent_id, child_id) regardless of
    // input order.
    std::vector<int> p_order(np), c_order(nc);
    for (int i = 0; i < np; ++i) p_order[i] = i;
    for (int j = 0; j < nc; ++j) c_order[j] = j;
    std::sort(p_order.begin(), p_order.end(),
              [&](int a, int b) { return parents[a].id < parents[b].id; });
    std::sort(c_order.begin(), c_order.end(),
              [&](int a, int b) { return children[a].id < children[b].id; });

    // Score matrix; entries below tau_e (and degenerate pairs) never match.
    std::vector<std::vector<double>> weight(np, std::vector<double>(nc, 0.0));
    for (int i = 0; i < np; ++i) {
        for (int j = 0; j < nc; ++j) {
            const Vec2 a = parents[p_order[i]].position;
            const Vec2 b = children[c_order[j]].position;
            if (a.x == b.x && a.y == b.y) continue;
            const double e = limb_score(field, a, b, params.n_samples);
            if (e >= params.tau_e && e > 0.0) weight[i][j] = e;
        }
    }

    std::vector<int> row_to_col(np, -1);
    if (params.greedy) {
        struct Edge {
            int i, j;
            double e;
        };
        std::vector<Edge> edges;
        for (int i = 0; i < np; ++i) {
            for (int j = 0; j < nc; ++j) {
                if (weight[i][j] > 0.0) edges.push_back({i, j, weight[i][j]});
            }
        }
        std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
            if (a.e != b.e) return a.e > b.e;
            if (a.i != b.i) return a.i < b.i;
            return a.j < b.j;
        });
        std::vector<char> row_used(np, 0), col_used(nc, 0);
        for (const Edge& e : edges) {
            if (row_used[e.i] || col_used[e.j]) continue;
            row_used[e.i] = col_used[e.j] = 1;
            row_to_col[e.i] = e.j;
        }
    } else {
        row_to_col = max_score_assignment(weight, params.tau_e);
    }

    for (int i = 0; i < np; ++i) {
        const int j = row_to_col[i];
        if (j < 0) continue;
        matches.push_back(
            {limb, parents[p_order[i]].id, children[c_order[j]].id, weight[i][j]});
    }
    std::sort(matches.begin(), matches.end(), [](const LimbMatch& a, const LimbMatch& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.parent_id != b.parent_id) return a.parent_id < b.parent_id;
        return a.child_id < b.child_id;
    });
    return matches;
}

int AssembledPose::joint_count_present() const {
    int n = 0;
    for (const auto& p : points) {
        if (p.has_value()) ++n;
    }
    return n;
}

double AssembledPose::total_score() const {
    double total = 0.0;
    for (const auto& s : scores) {
        if (s.has_value()) total += *s;
    }
    for (double e : limb_scores) total += e;
    return total;
}

namespace {

struct PartialPose {
    std::vector<int> slot;          // joint -> candidate id, -1 when empty
    std::vector<double> slot_score;  // score of the match that filled the slot
    std::vector<double> limb_scores;
    bool alive = true;
};

}  // namespace

std::vector<AssembledPose> assemble_poses(std::span<const DetectionCandidate> candidates,
                                          std::span<const LimbMatch> matches,
                                          const Skeleton& skeleton, int min_joints) {
    const int k = skeleton.joint_count();
    std::unordered_map<int, const DetectionCandidate*> by_id;
    by_id.reserve(candidates.size());
    for (const DetectionCandidate& c : candidates) by_id[c.id] = &c;

    std::vector<PartialPose> poses;
    std::unordered_map<int, int> pose_of;  // candidate id -> pose index

    auto place = [&](PartialPose& pose, int pose_idx, int joint, int cand_id, double score) {
        pose.slot[joint] = cand_id;
        pose.slot_score[joint] = score;
        pose_of[cand_id] = pose_idx;
    };
    auto evict = [&](PartialPose& pose, int joint) {
        pose_of.erase(pose.slot[joint]);
        pose.slot[joint] = -1;
        pose.slot_score[joint] = 0.0;
    };

    // Matches grouped by limb in skeleton order, descending score within a
    // limb.
    std::vector<LimbMatch> ordered(matches.begin(), matches.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const LimbMatch& a, const LimbMatch& b) {
        if (a.limb != b.limb) return a.limb < b.limb;
        if (a.score != b.score) return a.score > b.score;
        if (a.parent_id != b.parent_id) return a.parent_id < b.parent_id;
        return a.child_id < b.child_id;
    });

    for (const LimbMatch& m : ordered) {
        if (m.limb < 0 || m.limb >= skeleton.limb_count()) {
            throw std::invalid_argument("match references an unknown limb");
        }
        const int j1 = skeleton.limbs[m.limb][0];
        const int j2 = skeleton.limbs[m.limb][1];
        const auto parent_it = by_id.find(m.parent_id);
        const auto child_it = by_id.find(m.child_id);
        if (parent_it == by_id.end() || child_it == by_id.end()) {
            throw std::invalid_argument("match references a dangling candidate id");
        }
        if (parent_it->second->joint != j1 || child_it->second->joint != j2) {
            throw std::invalid_argument("match joint types disagree with the limb");
        }

        const auto pa_it = pose_of.find(m.parent_id);
        const auto pb_it = pose_of.find(m.child_id);
        const int pa = pa_it == pose_of.end() ? -1 : pa_it->second;
        const int pb = pb_it == pose_of.end() ? -1 : pb_it->second;

        if (pa < 0 && pb < 0) {
            PartialPose pose;
            pose.slot.assign(k, -1);
            pose.slot_score.assign(k, 0.0);
            poses.push_back(std::move(pose));
            const int idx = static_cast<int>(poses.size()) - 1;
            place(poses[idx], idx, j1, m.parent_id, m.score);
            place(poses[idx], idx, j2, m.child_id, m.score);
            poses[idx].limb_scores.push_back(m.score);
        } else if (pa >= 0 && pb < 0) {
            PartialPose& pose = poses[pa];
            if (pose.slot[j2] < 0) {
                place(pose, pa, j2, m.child_id, m.score);
                pose.limb_scores.push_back(m.score);
            } else if (m.score > pose.slot_score[j2]) {
                evict(pose, j2);
                place(pose, pa, j2, m.child_id, m.score);
                pose.limb_scores.push_back(m.score);
            }  // else: lower-score match rejected
        } else if (pa < 0 && pb >= 0) {
            PartialPose& pose = poses[pb];
            if (pose.slot[j1] < 0) {
                place(pose, pb, j1, m.parent_id, m.score);
                pose.limb_scores.push_back(m.score);
            } else if (m.score > pose.slot_score[j1]) {
                evict(pose, j1);
                place(pose, pb, j1, m.parent_id, m.score);
                pose.limb_scores.push_back(m.score);
            }
        } else if (pa == pb) {
            poses[pa].limb_scores.push_back(m.score);
        } else {
            // Merge: conflicting slots keep the higher-scored occupant.
            PartialPose& a = poses[pa];
            PartialPose& b = poses[pb];
            for (int j = 0; j < k; ++j) {
                if (b.slot[j] < 0) continue;
                if (a.slot[j] < 0) {
                    const int cand = b.slot[j];
                    const double score = b.slot_score[j];
                    place(a, pa, j, cand, score);
                } else if (a.slot[j] != b.slot[j]) {
                    if (b.slot_score[j] > a.slot_score[j]) {
                        const int cand = b.slot[j];
                        const double score = b.slot_score[j];
                        evict(a, j);
                        place(a, pa, j, cand, score);
                    } else {
                        pose_of.erase(b.slot[j]);
                    }
                }
            }
            a.limb_scores.insert(a.limb_scores.end(), b.limb_scores.begin(), b.limb_scores.end());
            a.limb_scores.push_back(m.score);
            b.alive = false;
            b.slot.assign(k, -1);
        }
    }

    std::vector<AssembledPose> out;
    for (const PartialPose& pose : poses) {
        if (!pose.alive) continue;
        AssembledPose ap;
        ap.points.assign(k, std::nullopt);
        ap.scores.assign(k, std::nullopt);
        int present = 0;
        for (int j = 0; j < k; ++j) {
            if (pose.slot[j] < 0) continue;
            const DetectionCandidate* c = by_id.at(pose.slot[j]);
            ap.points[j] = c->position;
            ap.scores[j] = static_cast<double>(c->score);
            ++present;
        }
        if (present < min_joints || pose.limb_scores.empty()) continue;
        ap.limb_scores = pose.limb_scores;
        out.push_back(std::move(ap));
    }
    std::stable_sort(out.begin(), out.end(), [](const AssembledPose& a, const AssembledPose& b) {
        return a.total_score() > b.total_score();
    });
    return out;
}

std::vector<AssembledPose> assemble_from_fields(const Skeleton& skeleton,
                                                std::span<const ScalarGrid> confidences,
                                                std::span<const VectorGrid> affinities,
                                                const NmsParams& nms,
                                                const IntegralParams& integral, int min_joints) {
    if (static_cast<int>(confidences.size()) != skeleton.joint_count() ||
        static_cast<int>(affinities.size()) != skeleton.limb_count()) {
        throw std::invalid_argument("field counts do not match skeleton");
    }
    const std::vector<DetectionCandidate> candidates = detect_all(confidences, nms);
    std::vector<std::vector<DetectionCandidate>> by_joint(skeleton.joint_count());
    for (const DetectionCandidate& c : candidates) by_joint[c.joint].push_back(c);

    std::vector<LimbMatch> matches;
    for (int c = 0; c < skeleton.limb_count(); ++c) {
        const auto& parents = by_joint[skeleton.limbs[c][0]];
        const auto& children = by_joint[skeleton.limbs[c][1]];
        std::vector<LimbMatch> limb_matches =
            match_limb(parents, children, affinities[c], c, integral);
        matches.insert(matches.end(), limb_matches.begin(), limb_matches.end());
    }
    return assemble_poses(candidates, matches, skeleton, min_joints);
}

}  // namespace paf
