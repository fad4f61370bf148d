// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "paf/assemble.hpp"
#include "paf/boxes.hpp"
#include "paf/eval.hpp"
#include "paf/synth.hpp"

namespace paf {

// Insertion-ordered JSON so documents serialize with fixed key order.
using Json = nlohmann::ordered_json;

Json skeleton_to_json(const Skeleton& skeleton);
Skeleton skeleton_from_json(const Json& j);

/// A generated scene with its synthesis parameters; the ground-truth side
/// of a fixture bundle.
struct Scene {
    Skeleton skeleton;
    int width = 368;
    int height = 368;
    std::uint64_t seed = 0;
    double occlusion_level = 0.0;
    SynthParams params;
    std::vector<PersonPose> people;
    std::vector<double> areas;  // tight visible-joint bbox area per person
};

Json scene_to_json(const Scene& scene);
Scene scene_from_json(const Json& j);

/// Assembled poses with the skeleton they index into.
struct PosesDocument {
    Skeleton skeleton;
    std::vector<AssembledPose> people;
};

Json poses_to_json(const PosesDocument& doc);
PosesDocument poses_from_json(const Json& j);

Json boxes_to_json(const std::vector<Box>& boxes);
std::vector<Box> boxes_from_json(const Json& j);

/// Multi-image evaluation inputs. Prediction files are poses documents
/// (single image) or {"skeleton", "images": [{"people": [...]}]}; ground
/// truth files are scenes or the analogous multi-image form with
/// {"points", "visible", "area"} people.
struct EvalInputs {
    Skeleton skeleton;
    std::vector<std::vector<EvalPrediction>> images;
};
struct EvalGtInputs {
    Skeleton skeleton;
    std::vector<std::vector<EvalGroundTruth>> images;
};

EvalInputs eval_preds_from_json(const Json& j);
EvalGtInputs eval_gts_from_json(const Json& j);

Json report_to_json(const MetricReport& report);

Json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const Json& j);

}  // namespace paf
