// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#include "paf/bundle.hpp"

#include "paf/errors.hpp"
#include "paf/paft_io.hpp"

namespace paf {

void write_bundle(const std::filesystem::path& dir, const Scene& scene, const FieldSet& fields) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory: " + dir.string());
    save_json(dir / "scene.json", scene_to_json(scene));
    write_grids(dir / "S.paft", fields.confidences);
    write_vector_grids(dir / "L.paft", fields.affinities);
    const ScalarGrid mask[1] = {fields.mask};
    write_grids(dir / "W.paft", mask);
}

Bundle read_bundle(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw IoError("bundle directory not found: " + dir.string());
    }
    Bundle bundle;
    try {
        bundle.scene = scene_from_json(load_json(dir / "scene.json"));
        bundle.fields.skeleton = bundle.scene.skeleton;
        bundle.fields.confidences = read_grids(dir / "S.paft");
        bundle.fields.affinities = read_vector_grids(dir / "L.paft");
        std::vector<ScalarGrid> mask = read_grids(dir / "W.paft");
        if (mask.size() != 1) throw BundleError("W.paft must hold exactly 1 channel");
        bundle.fields.mask = std::move(mask[0]);
    } catch (const IoError& e) {
        throw BundleError("malformed bundle " + dir.string() + ": " + e.what());
    } catch (const SchemaError& e) {
        throw BundleError("malformed bundle " + dir.string() + ": " + e.what());
    }

    const Skeleton& skeleton = bundle.scene.skeleton;
    if (static_cast<int>(bundle.fields.confidences.size()) != skeleton.joint_count() ||
        static_cast<int>(bundle.fields.affinities.size()) != skeleton.limb_count()) {
        throw SkeletonMismatchError("bundle tensor channels disagree with skeleton: " +
                                    dir.string());
    }
    try {
        bundle.fields.validate();
    } catch (const std::invalid_argument& e) {
        throw BundleError("malformed bundle " + dir.string() + ": " + e.what());
    }
    return bundle;
}

}  // namespace paf
