// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: synth | assemble | expand | eval | render.
// Exit codes: 0 ok, 2 I/O, 3 bundle, 4 skeleton, 5 schema, 6 render.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "paf/bundle.hpp"
#include "paf/config.hpp"
#include "paf/errors.hpp"
#include "paf/render_svg.hpp"

namespace {

constexpr int kExitIo = 2;
constexpr int kExitBundle = 3;
constexpr int kExitSkeleton = 4;
constexpr int kExitSchema = 5;
constexpr int kExitRender = 6;

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw paf::IoError("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw paf::IoError("write failed: " + path.string());
}

struct SynthArgs {
    int n_people = 1;
    double occlusion = 0.0;
    int width = 368;
    int height = 368;
    std::string out_dir;
};

void run_synth(const paf::RunConfig& config, const SynthArgs& args) {
    const paf::Skeleton skeleton = paf::skeleton_preset(config.skeleton);
    paf::Scene scene;
    scene.skeleton = skeleton;
    scene.width = args.width;
    scene.height = args.height;
    scene.seed = config.seed;
    scene.occlusion_level = args.occlusion;
    scene.params = config.synth_params();
    scene.people = paf::scene_fixture(config.seed, args.n_people, skeleton,
                                      {static_cast<double>(args.width),
                                       static_cast<double>(args.height), 12.0},
                                      args.occlusion, scene.params);
    for (const paf::PersonPose& person : scene.people) {
        scene.areas.push_back(person.visible_bbox_area());
    }
    const paf::FieldSet fields =
        paf::synthesize_fields(skeleton, scene.people, scene.params, args.width, args.height);
    paf::write_bundle(args.out_dir, scene, fields);
}

void run_assemble(const paf::RunConfig& config, const std::string& fields_dir,
                  const std::string& out_path, bool greedy, int min_joints) {
    const paf::Bundle bundle = paf::read_bundle(fields_dir);
    paf::PosesDocument doc;
    doc.skeleton = bundle.scene.skeleton;
    doc.people = paf::assemble_from_fields(bundle.scene.skeleton, bundle.fields.confidences,
                                           bundle.fields.affinities, config.nms,
                                           config.integral_params(greedy), min_joints);
    paf::save_json(out_path, paf::poses_to_json(doc));
}

void run_expand(const paf::RunConfig& config, const std::string& boxes_path,
                const std::string& fields_dir, const std::string& out_path) {
    const paf::Bundle bundle = paf::read_bundle(fields_dir);
    std::vector<paf::Box> boxes = paf::boxes_from_json(paf::load_json(boxes_path));
    const std::vector<paf::DetectionCandidate> candidates =
        paf::detect_all(bundle.fields.confidences, config.nms);
    boxes = paf::expand_boxes(std::move(boxes), bundle.fields, candidates, config.expand);
    paf::save_json(out_path, paf::boxes_to_json(boxes));
}

void run_eval(const std::string& preds_path, const std::string& gts_path,
              const std::string& out_path) {
    const paf::EvalInputs preds = paf::eval_preds_from_json(paf::load_json(preds_path));
    const paf::EvalGtInputs gts = paf::eval_gts_from_json(paf::load_json(gts_path));
    if (preds.skeleton.name != gts.skeleton.name ||
        preds.skeleton.joint_count() != gts.skeleton.joint_count()) {
        throw paf::SkeletonMismatchError("prediction and ground-truth skeletons disagree");
    }
    if (preds.images.size() != gts.images.size()) {
        throw paf::SchemaError("prediction and ground-truth image counts disagree");
    }
    std::vector<paf::EvalImage> images(preds.images.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
        images[i].preds = preds.images[i];
        images[i].gts = gts.images[i];
    }
    const paf::MetricReport report = paf::metric_report(images, gts.skeleton);
    paf::save_json(out_path, paf::report_to_json(report));
}

void run_render(const std::string& fields_dir, const std::string& poses_path,
                const std::string& boxes_path, int quiver_stride, const std::string& out_path) {
    paf::Bundle bundle;
    paf::PosesDocument poses;
    std::vector<paf::Box> boxes;
    paf::RenderInput input;
    input.quiver_stride = quiver_stride;
    try {
        if (!fields_dir.empty()) {
            bundle = paf::read_bundle(fields_dir);
            input.fields = &bundle.fields;
            input.skeleton = &bundle.fields.skeleton;
        }
        if (!poses_path.empty()) {
            poses = paf::poses_from_json(paf::load_json(poses_path));
            input.poses = &poses.people;
            input.skeleton = &poses.skeleton;
        }
        if (!boxes_path.empty()) {
            boxes = paf::boxes_from_json(paf::load_json(boxes_path));
            input.boxes = &boxes;
        }
        const std::string svg = paf::render_svg(input);
        write_text(out_path, svg);
        return;
    } catch (const paf::IoError&) {
        throw;
    } catch (const std::exception& e) {
        throw paf::RenderError(e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bottom-up multi-person pose assembly over part affinity fields"};
    app.require_subcommand(0, 1);

    std::string config_path;
    bool dump_config = false;
    app.add_option("--config", config_path, "JSON config file");
    app.add_flag("--dump-config", dump_config, "print the merged config and exit");

    // Flag overrides; only applied when given.
    std::string skeleton_name;
    double sigma = 0, sigma_l = 0, tau_e = 0, tau_out = 0, step_frac = 0, margin = 0, epsilon = 0;
    double nms_threshold = 0;
    int nms_window = 0, n_samples = 0, max_steps = 0;
    std::uint64_t seed = 0;
    auto* opt_skeleton = app.add_option("--skeleton", skeleton_name, "skeleton preset");
    auto* opt_sigma = app.add_option("--sigma", sigma, "confidence peak spread, px");
    auto* opt_sigma_l = app.add_option("--sigma-l", sigma_l, "limb band half-width, px");
    auto* opt_nms_t = app.add_option("--nms-threshold", nms_threshold, "peak threshold");
    auto* opt_nms_w = app.add_option("--nms-window", nms_window, "NMS window, odd");
    auto* opt_samples = app.add_option("--n-samples", n_samples, "integral sample count");
    auto* opt_tau_e = app.add_option("--tau-e", tau_e, "limb acceptance threshold");
    auto* opt_tau_out = app.add_option("--tau-out", tau_out, "outwardness threshold");
    auto* opt_step = app.add_option("--step-frac", step_frac, "expansion step fraction");
    auto* opt_max_steps = app.add_option("--max-steps", max_steps, "expansion step cap");
    auto* opt_margin = app.add_option("--margin", margin, "side trigger margin, px");
    auto* opt_eps = app.add_option("--epsilon", epsilon, "allowed IoU slack");
    auto* opt_seed = app.add_option("--seed", seed, "RNG seed");

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "generate a ground-truth fixture bundle");
    synth->add_option("--n-people", synth_args.n_people, "people in the scene")->required();
    synth->add_option("--occlusion", synth_args.occlusion, "occlusion level in [0,1]");
    synth->add_option("--width", synth_args.width, "grid width");
    synth->add_option("--height", synth_args.height, "grid height");
    synth->add_option("--out", synth_args.out_dir, "output bundle directory")->required();

    std::string fields_dir, out_path, boxes_path, preds_path, gts_path, poses_path;
    bool greedy = false;
    int min_joints = 2;
    CLI::App* assemble = app.add_subcommand("assemble", "detect and assemble poses from a bundle");
    assemble->add_option("--fields", fields_dir, "fixture bundle directory")->required();
    assemble->add_option("--out", out_path, "output poses JSON")->required();
    assemble->add_flag("--greedy-matching", greedy, "greedy matcher instead of exact");
    assemble->add_option("--min-joints", min_joints, "drop poses with fewer joints");

    CLI::App* expand = app.add_subcommand("expand", "grow boxes along outward affinity fields");
    expand->add_option("--boxes", boxes_path, "input boxes JSON")->required();
    expand->add_option("--fields", fields_dir, "fixture bundle directory")->required();
    expand->add_option("--out", out_path, "output boxes JSON")->required();

    CLI::App* eval = app.add_subcommand("eval", "keypoint metrics for predictions vs ground truth");
    eval->add_option("--preds", preds_path, "predictions JSON")->required();
    eval->add_option("--gts", gts_path, "ground-truth JSON")->required();
    eval->add_option("--out", out_path, "output report JSON")->required();

    int quiver_stride = 0;
    CLI::App* render = app.add_subcommand("render", "draw poses, fields and boxes as SVG");
    render->add_option("--fields", fields_dir, "fixture bundle directory");
    render->add_option("--poses", poses_path, "poses JSON");
    render->add_option("--boxes", boxes_path, "boxes JSON");
    render->add_option("--quiver-stride", quiver_stride, "PAF arrow spacing, 0 = off");
    render->add_option("--out", out_path, "output SVG")->required();

    for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();
    CLI11_PARSE(app, argc, argv);

    try {
        paf::RunConfig config;
        if (!config_path.empty()) config = paf::config_from_json(paf::load_json(config_path));
        if (opt_skeleton->count() > 0) config.skeleton = skeleton_name;
        if (opt_sigma->count() > 0) config.sigma = sigma;
        if (opt_sigma_l->count() > 0) config.sigma_l = sigma_l;
        if (opt_nms_t->count() > 0) config.nms.threshold = static_cast<float>(nms_threshold);
        if (opt_nms_w->count() > 0) config.nms.window = nms_window;
        if (opt_samples->count() > 0) config.integral.n_samples = n_samples;
        if (opt_tau_e->count() > 0) config.integral.tau_e = tau_e;
        if (opt_tau_out->count() > 0) config.expand.tau_out = tau_out;
        if (opt_step->count() > 0) config.expand.step_frac = step_frac;
        if (opt_max_steps->count() > 0) config.expand.max_steps = max_steps;
        if (opt_margin->count() > 0) config.expand.margin = margin;
        if (opt_eps->count() > 0) config.expand.epsilon = epsilon;
        if (opt_seed->count() > 0) config.seed = seed;
        config.validate();

        if (dump_config) {
            std::cout << paf::config_to_json(config).dump(2) << '\n';
            return 0;
        }
        if (synth->parsed()) {
            run_synth(config, synth_args);
        } else if (assemble->parsed()) {
            run_assemble(config, fields_dir, out_path, greedy, min_joints);
        } else if (expand->parsed()) {
            run_expand(config, boxes_path, fields_dir, out_path);
        } else if (eval->parsed()) {
            run_eval(preds_path, gts_path, out_path);
        } else if (render->parsed()) {
            run_render(fields_dir, poses_path, boxes_path, quiver_stride, out_path);
        } else {
            std::cerr << app.help() << '\n';
            return 1;
        }
        return 0;
    } catch (const paf::RenderError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRender;
    } catch (const paf::SchemaError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSchema;
    } catch (const paf::SkeletonMismatchError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSkeleton;
    } catch (const paf::BundleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBundle;
    } catch (const paf::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
