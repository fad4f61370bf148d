// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#include "paf/json_io.hpp"

#include <cmath>
#include <fstream>

#include "paf/errors.hpp"

namespace paf {

namespace {

const Json& require(const Json& j, const char* key) {
    if (!j.is_object()) throw SchemaError("expected an object holding \"" + std::string(key) + "\"");
    const auto it = j.find(key);
    if (it == j.end()) throw SchemaError("missing key \"" + std::string(key) + "\"");
    return *it;
}

double require_number(const Json& j, const char* key) {
    const Json& v = require(j, key);
    if (!v.is_number()) throw SchemaError("key \"" + std::string(key) + "\" must be a number");
    return v.get<double>();
}

int require_int(const Json& j, const char* key) {
    const Json& v = require(j, key);
    if (!v.is_number_integer()) {
        throw SchemaError("key \"" + std::string(key) + "\" must be an integer");
    }
    return v.get<int>();
}

std::string require_string(const Json& j, const char* key) {
    const Json& v = require(j, key);
    if (!v.is_string()) throw SchemaError("key \"" + std::string(key) + "\" must be a string");
    return v.get<std::string>();
}

const Json& require_array(const Json& j, const char* key) {
    const Json& v = require(j, key);
    if (!v.is_array()) throw SchemaError("key \"" + std::string(key) + "\" must be an array");
    return v;
}

Vec2 point_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw SchemaError("points must be [x, y] number pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json skeleton_to_json(const Skeleton& skeleton) {
    Json j;
    j["name"] = skeleton.name;
    j["joints"] = skeleton.joints;
    Json limbs = Json::array();
    for (const auto& limb : skeleton.limbs) limbs.push_back({limb[0], limb[1]});
    j["limbs"] = std::move(limbs);
    j["root"] = skeleton.root;
    j["oks_kappa"] = skeleton.oks_kappa;
    return j;
}

Skeleton skeleton_from_json(const Json& j) {
    Skeleton s;
    s.name = require_string(j, "name");
    for (const Json& joint : require_array(j, "joints")) {
        if (!joint.is_string()) throw SchemaError("joint names must be strings");
        s.joints.push_back(joint.get<std::string>());
    }
    for (const Json& limb : require_array(j, "limbs")) {
        if (!limb.is_array() || limb.size() != 2 || !limb[0].is_number_integer() ||
            !limb[1].is_number_integer()) {
            throw SchemaError("limbs must be [parent, child] index pairs");
        }
        s.limbs.push_back({limb[0].get<int>(), limb[1].get<int>()});
    }
    s.root = require_int(j, "root");
    for (const Json& kappa : require_array(j, "oks_kappa")) {
        if (!kappa.is_number()) throw SchemaError("oks_kappa entries must be numbers");
        s.oks_kappa.push_back(kappa.get<double>());
    }
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("invalid skeleton: ") + e.what());
    }
    return s;
}

namespace {

Json person_to_json(const PersonPose& pose, double area) {
    Json p;
    Json points = Json::array();
    for (const Vec2& pt : pose.points) points.push_back({pt.x, pt.y});
    p["points"] = std::move(points);
    Json visible = Json::array();
    for (bool v : pose.visible) visible.push_back(v);
    p["visible"] = std::move(visible);
    p["area"] = area;
    return p;
}

std::pair<PersonPose, double> person_from_json(const Json& j, int joint_count) {
    PersonPose pose;
    const Json& points = require_array(j, "points");
    for (const Json& pt : points) pose.points.push_back(point_from_json(pt));
    const Json& visible = require_array(j, "visible");
    for (const Json& v : visible) {
        if (!v.is_boolean()) throw SchemaError("visible entries must be booleans");
        pose.visible.push_back(v.get<bool>());
    }
    if (pose.points.size() != pose.visible.size() ||
        static_cast<int>(pose.points.size()) != joint_count) {
        throw SchemaError("person arrays must match the skeleton joint count");
    }
    return {std::move(pose), require_number(j, "area")};
}

}  // namespace

Json scene_to_json(const Scene& scene) {
    Json j;
    j["skeleton"] = skeleton_to_json(scene.skeleton);
    j["width"] = scene.width;
    j["height"] = scene.height;
    j["seed"] = scene.seed;
    j["occlusion_level"] = scene.occlusion_level;
    j["params"] = Json{{"sigma", scene.params.sigma}, {"sigma_l", scene.params.sigma_l}};
    Json people = Json::array();
    for (std::size_t i = 0; i < scene.people.size(); ++i) {
        const double area = i < scene.areas.size() ? scene.areas[i] : 0.0;
        people.push_back(person_to_json(scene.people[i], area));
    }
    j["people"] = std::move(people);
    return j;
}

Scene scene_from_json(const Json& j) {
    Scene scene;
    scene.skeleton = skeleton_from_json(require(j, "skeleton"));
    scene.width = require_int(j, "width");
    scene.height = require_int(j, "height");
    const Json& seed = require(j, "seed");
    if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
        throw SchemaError("seed must be an integer");
    }
    scene.seed = seed.get<std::uint64_t>();
    scene.occlusion_level = require_number(j, "occlusion_level");
    const Json& params = require(j, "params");
    scene.params.sigma = require_number(params, "sigma");
    scene.params.sigma_l = require_number(params, "sigma_l");
    if (scene.width < 1 || scene.height < 1) throw SchemaError("scene dimensions must be positive");
    if (!(scene.params.sigma > 0.0) || !(scene.params.sigma_l > 0.0)) {
        throw SchemaError("scene params must be positive");
    }
    for (const Json& person : require_array(j, "people")) {
        auto [pose, area] = person_from_json(person, scene.skeleton.joint_count());
        scene.people.push_back(std::move(pose));
        scene.areas.push_back(area);
    }
    return scene;
}

Json poses_to_json(const PosesDocument& doc) {
    Json j;
    j["skeleton"] = skeleton_to_json(doc.skeleton);
    Json people = Json::array();
    for (const AssembledPose& pose : doc.people) {
        Json p;
        Json points = Json::array();
        Json scores = Json::array();
        for (int joint = 0; joint < doc.skeleton.joint_count(); ++joint) {
            if (pose.points[joint].has_value()) {
                points.push_back({pose.points[joint]->x, pose.points[joint]->y});
                scores.push_back(*pose.scores[joint]);
            } else {
                points.push_back(nullptr);
                scores.push_back(nullptr);
            }
        }
        p["points"] = std::move(points);
        p["scores"] = std::move(scores);
        p["total_score"] = pose.total_score();
        people.push_back(std::move(p));
    }
    j["people"] = std::move(people);
    return j;
}

PosesDocument poses_from_json(const Json& j) {
    PosesDocument doc;
    doc.skeleton = skeleton_from_json(require(j, "skeleton"));
    const int k = doc.skeleton.joint_count();
    for (const Json& person : require_array(j, "people")) {
        AssembledPose pose;
        const Json& points = require_array(person, "points");
        const Json& scores = require_array(person, "scores");
        if (static_cast<int>(points.size()) != k || static_cast<int>(scores.size()) != k) {
            throw SchemaError("pose arrays must match the skeleton joint count");
        }
        for (int joint = 0; joint < k; ++joint) {
            if (points[joint].is_null()) {
                if (!scores[joint].is_null()) {
                    throw SchemaError("score present for an absent joint");
                }
                pose.points.emplace_back(std::nullopt);
                pose.scores.emplace_back(std::nullopt);
            } else {
                pose.points.emplace_back(point_from_json(points[joint]));
                if (!scores[joint].is_number()) {
                    throw SchemaError("present joints need numeric scores");
                }
                pose.scores.emplace_back(scores[joint].get<double>());
            }
        }
        require_number(person, "total_score");
        doc.people.push_back(std::move(pose));
    }
    return doc;
}

Json boxes_to_json(const std::vector<Box>& boxes) {
    Json j = Json::array();
    for (const Box& box : boxes) {
        Json b;
        b["x_min"] = box.x_min;
        b["y_min"] = box.y_min;
        b["x_max"] = box.x_max;
        b["y_max"] = box.y_max;
        Json history = Json::array();
        for (const ExpansionRecord& rec : box.history) {
            history.push_back(Json{{"joint", rec.joint}, {"side", side_name(rec.side)},
                                   {"step", rec.step}});
        }
        b["history"] = std::move(history);
        if (box.person_hint.has_value()) b["person_hint"] = *box.person_hint;
        j.push_back(std::move(b));
    }
    return j;
}

std::vector<Box> boxes_from_json(const Json& j) {
    if (!j.is_array()) throw SchemaError("boxes document must be an array");
    std::vector<Box> boxes;
    for (const Json& b : j) {
        Box box;
        box.x_min = require_number(b, "x_min");
        box.y_min = require_number(b, "y_min");
        box.x_max = require_number(b, "x_max");
        box.y_max = require_number(b, "y_max");
        if (!(box.x_min < box.x_max) || !(box.y_min < box.y_max)) {
            throw SchemaError("box must have positive extent");
        }
        for (const Json& rec : require_array(b, "history")) {
            ExpansionRecord r;
            r.joint = require_int(rec, "joint");
            const auto side = side_from_name(require_string(rec, "side"));
            if (!side) throw SchemaError("unknown side in history");
            r.side = *side;
            r.step = require_number(rec, "step");
            box.history.push_back(r);
        }
        if (b.contains("person_hint")) {
            if (!b["person_hint"].is_number_integer()) {
                throw SchemaError("person_hint must be an integer");
            }
            box.person_hint = b["person_hint"].get<int>();
        }
        boxes.push_back(std::move(box));
    }
    return boxes;
}

namespace {

std::vector<EvalPrediction> preds_from_people(const Json& people_json, int joint_count) {
    std::vector<EvalPrediction> preds;
    for (const Json& person : people_json) {
        EvalPrediction p;
        const Json& points = require_array(person, "points");
        const Json& scores = require_array(person, "scores");
        if (static_cast<int>(points.size()) != joint_count ||
            static_cast<int>(scores.size()) != joint_count) {
            throw SchemaError("pose arrays must match the skeleton joint count");
        }
        for (int j = 0; j < joint_count; ++j) {
            if (points[j].is_null()) {
                if (!scores[j].is_null()) throw SchemaError("score present for an absent joint");
                p.pose.points.push_back({0.0, 0.0});
                p.pose.visible.push_back(false);
            } else {
                if (!scores[j].is_number()) throw SchemaError("present joints need numeric scores");
                p.pose.points.push_back(point_from_json(points[j]));
                p.pose.visible.push_back(true);
            }
        }
        p.score = require_number(person, "total_score");
        preds.push_back(std::move(p));
    }
    return preds;
}

}  // namespace

EvalInputs eval_preds_from_json(const Json& j) {
    EvalInputs inputs;
    inputs.skeleton = skeleton_from_json(require(j, "skeleton"));
    const int k = inputs.skeleton.joint_count();
    if (j.contains("images")) {
        for (const Json& image : require_array(j, "images")) {
            inputs.images.push_back(preds_from_people(require_array(image, "people"), k));
        }
    } else {
        inputs.images.push_back(preds_from_people(require_array(j, "people"), k));
    }
    return inputs;
}

EvalGtInputs eval_gts_from_json(const Json& j) {
    EvalGtInputs inputs;
    inputs.skeleton = skeleton_from_json(require(j, "skeleton"));
    const bool multi = j.contains("images");
    Json images = multi ? require_array(j, "images") : Json::array({j});
    for (const Json& image : images) {
        std::vector<EvalGroundTruth> gts;
        for (const Json& person : require_array(image, "people")) {
            auto [pose, area] = person_from_json(person, inputs.skeleton.joint_count());
            if (pose.visible_count() == 0) {
                throw SchemaError("ground-truth person has no visible joints");
            }
            if (!(area > 0.0)) throw SchemaError("ground-truth area must be positive");
            EvalGroundTruth gt;
            gt.pose = std::move(pose);
            gt.area = area;
            gts.push_back(std::move(gt));
        }
        inputs.images.push_back(std::move(gts));
    }
    return inputs;
}

Json report_to_json(const MetricReport& report) {
    Json j;
    j["ap"] = report.ap;
    j["ap50"] = report.ap50;
    j["ap75"] = report.ap75;
    j["ap_medium"] = report.ap_medium.has_value() ? Json(*report.ap_medium) : Json(nullptr);
    j["ap_large"] = report.ap_large.has_value() ? Json(*report.ap_large) : Json(nullptr);
    if (report.pckh.has_value()) j["pckh"] = *report.pckh;
    Json per = Json::array();
    for (const auto& [threshold, ap] : report.per_threshold) per.push_back({threshold, ap});
    j["per_threshold"] = std::move(per);
    return j;
}

Json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("invalid JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

void save_json(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace paf
