// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#include "paf/config.hpp"

#include <cmath>

#include "paf/errors.hpp"

namespace paf {

namespace {

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const char* where) {
    if (!j.is_object()) throw SchemaError(std::string(where) + " must be an object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) throw SchemaError("unknown key \"" + key + "\" in " + where);
    }
}

template <typename T>
void load_number(const Json& j, const char* key, T& out) {
    const auto it = j.find(key);
    if (it == j.end()) return;
    if constexpr (std::is_integral_v<T>) {
        if (!it->is_number_integer() && !it->is_number_unsigned()) {
            throw SchemaError("key \"" + std::string(key) + "\" must be an integer");
        }
    } else {
        if (!it->is_number()) throw SchemaError("key \"" + std::string(key) + "\" must be a number");
    }
    out = it->get<T>();
}

}  // namespace

void RunConfig::validate() const {
    if (skeleton != "coco17" && skeleton != "mpii16") {
        throw SchemaError("config: unknown skeleton preset \"" + skeleton + "\"");
    }
    if (!(sigma > 0.0)) throw SchemaError("config: sigma must be positive");
    if (!(sigma_l > 0.0)) throw SchemaError("config: sigma_l must be positive");
    if (!(nms.threshold > 0.0f && nms.threshold < 1.0f)) {
        throw SchemaError("config: nms.threshold must be in (0, 1)");
    }
    if (nms.window < 3 || nms.window % 2 == 0) {
        throw SchemaError("config: nms.window must be odd and >= 3");
    }
    if (integral.n_samples < 2) throw SchemaError("config: integral.n_samples must be >= 2");
    if (!(integral.tau_e >= 0.0)) throw SchemaError("config: integral.tau_e must be >= 0");
    if (!std::isfinite(expand.tau_out)) throw SchemaError("config: expand.tau_out must be finite");
    if (!(expand.step_frac > 0.0)) throw SchemaError("config: expand.step_frac must be positive");
    if (expand.max_steps < 0) throw SchemaError("config: expand.max_steps must be >= 0");
    if (!(expand.margin >= 0.0)) throw SchemaError("config: expand.margin must be >= 0");
    if (!(expand.epsilon >= 0.0)) throw SchemaError("config: expand.epsilon must be >= 0");
}

Json config_to_json(const RunConfig& config) {
    Json j;
    j["skeleton"] = config.skeleton;
    j["sigma"] = config.sigma;
    j["sigma_l"] = config.sigma_l;
    j["nms"] = Json{{"threshold", config.nms.threshold}, {"window", config.nms.window}};
    j["integral"] =
        Json{{"n_samples", config.integral.n_samples}, {"tau_e", config.integral.tau_e}};
    j["expand"] = Json{{"tau_out", config.expand.tau_out},
                       {"step_frac", config.expand.step_frac},
                       {"max_steps", config.expand.max_steps},
                       {"margin", config.expand.margin},
                       {"epsilon", config.expand.epsilon}};
    j["seed"] = config.seed;
    return j;
}

RunConfig config_from_json(const Json& j) {
    RunConfig config;
    check_keys(j, {"skeleton", "sigma", "sigma_l", "nms", "integral", "expand", "seed"}, "config");
    if (j.contains("skeleton")) {
        if (!j["skeleton"].is_string()) throw SchemaError("config: skeleton must be a string");
        config.skeleton = j["skeleton"].get<std::string>();
    }
    load_number(j, "sigma", config.sigma);
    load_number(j, "sigma_l", config.sigma_l);
    if (j.contains("nms")) {
        const Json& nms = j["nms"];
        check_keys(nms, {"threshold", "window"}, "config.nms");
        load_number(nms, "threshold", config.nms.threshold);
        load_number(nms, "window", config.nms.window);
    }
    if (j.contains("integral")) {
        const Json& integral = j["integral"];
        check_keys(integral, {"n_samples", "tau_e"}, "config.integral");
        load_number(integral, "n_samples", config.integral.n_samples);
        load_number(integral, "tau_e", config.integral.tau_e);
    }
    if (j.contains("expand")) {
        const Json& expand = j["expand"];
        check_keys(expand, {"tau_out", "step_frac", "max_steps", "margin", "epsilon"},
                   "config.expand");
        load_number(expand, "tau_out", config.expand.tau_out);
        load_number(expand, "step_frac", config.expand.step_frac);
        load_number(expand, "max_steps", config.expand.max_steps);
        load_number(expand, "margin", config.expand.margin);
        load_number(expand, "epsilon", config.expand.epsilon);
    }
    load_number(j, "seed", config.seed);
    config.validate();
    return config;
}

}  // namespace paf
