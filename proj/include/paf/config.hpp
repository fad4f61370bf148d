// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "paf/assemble.hpp"
#include "paf/boxes.hpp"
#include "paf/detect.hpp"
#include "paf/json_io.hpp"
#include "paf/synth.hpp"

namespace paf {

/// Every knob of the pipeline in one place. The JSON schema mirrors the
/// nesting here exactly; unknown keys are rejected.
struct RunConfig {
    std::string skeleton = "coco17";
    double sigma = 7.0;
    double sigma_l = 4.0;
    NmsParams nms;
    struct Integral {
        int n_samples = 10;
        double tau_e = 0.05;
    } integral;
    ExpandParams expand;
    std::uint64_t seed = 0;

    SynthParams synth_params() const { return {sigma, sigma_l}; }
    IntegralParams integral_params(bool greedy = false) const {
        return {integral.n_samples, integral.tau_e, greedy};
    }

    /// Throws SchemaError when any value is outside its module's range.
    void validate() const;
};

Json config_to_json(const RunConfig& config);
RunConfig config_from_json(const Json& j);

}  // namespace paf
