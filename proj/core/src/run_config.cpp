// SPDX-License-Identifier: Apache-2.0
//
// fasrssi - RSSI ranging with fluid antenna systems
// Copyright (C) 2026 The fasrssi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "fasrssi/run_config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fasrssi/errors.hpp"

namespace fasrssi {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw InputError("config: '" + where + "' must be an object");
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items()) {
        if (!keys.count(key)) {
            throw InputError("config: unknown key '" + (where.empty() ? key : where + "." + key) +
                             "'");
        }
    }
}

template <typename T>
void read(const json& obj, const char* key, T& out, const std::string& where) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw InputError("config: '" + where + "." + key + "' has the wrong type");
    }
}

} // namespace

ExperimentSpec preset_by_name(const std::string& name, std::uint64_t seed, int trials) {
    if (name == "fig2") return fig2_preset(seed, trials);
    if (name == "fig3") return fig3_preset(seed, trials);
    if (name == "port-doubling") return port_doubling_preset(seed, trials);
    throw InputError("unknown preset '" + name + "' (expected fig2, fig3 or port-doubling)");
}

RunConfig parse_run_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    check_keys(doc, "", {"preset", "name", "sweep", "layout", "scene", "channel", "estimators",
                         "solver", "trials", "seed", "workers", "output"});

    RunConfig cfg;
    ExperimentSpec& spec = cfg.spec;
    if (doc.contains("preset")) {
        std::string preset;
        read(doc, "preset", preset, "");
        spec = preset_by_name(preset, spec.base_seed, spec.trials);
    }
    read(doc, "name", spec.name, "");
    read(doc, "trials", spec.trials, "");
    read(doc, "seed", spec.base_seed, "");
    read(doc, "workers", spec.workers, "");

    if (doc.contains("sweep")) {
        const json& s = doc["sweep"];
        check_keys(s, "sweep", {"axis", "values"});
        std::string axis;
        read(s, "axis", axis, "sweep");
        if (!axis.empty()) spec.axis = parse_sweep_axis(axis);
        read(s, "values", spec.axis_values, "sweep");
    }
    if (doc.contains("layout")) {
        const json& l = doc["layout"];
        check_keys(l, "layout", {"n_ports", "aperture", "wavelength", "spacing_h"});
        read(l, "n_ports", spec.n_ports, "layout");
        read(l, "aperture", spec.aperture, "layout");
        read(l, "wavelength", spec.wavelength, "layout");
        read(l, "spacing_h", spec.spacing_h, "layout");
    }
    if (doc.contains("scene")) {
        const json& s = doc["scene"];
        check_keys(s, "scene",
                   {"distance", "bearing", "tx_power_dbm", "gain_tx", "gain_rx", "path_loss_exp"});
        read(s, "distance", spec.scene.distance, "scene");
        read(s, "bearing", spec.scene.bearing, "scene");
        read(s, "tx_power_dbm", spec.scene.tx_power_dbm, "scene");
        read(s, "gain_tx", spec.scene.gain_tx, "scene");
        read(s, "gain_rx", spec.scene.gain_rx, "scene");
        read(s, "path_loss_exp", spec.scene.path_loss_exp, "scene");
    }
    if (doc.contains("channel")) {
        const json& c = doc["channel"];
        check_keys(c, "channel", {"model", "snr_db", "single_antenna_correlation"});
        std::string model;
        read(c, "model", model, "channel");
        if (!model.empty()) spec.correlation = parse_correlation_model(model);
        read(c, "snr_db", spec.snr_db, "channel");
        read(c, "single_antenna_correlation", spec.single_antenna_correlation, "channel");
    }
    if (doc.contains("estimators")) {
        std::vector<std::string> names;
        read(doc, "estimators", names, "");
        spec.estimators.clear();
        for (const auto& n : names) spec.estimators.push_back(parse_estimator_method(n));
    }
    if (doc.contains("solver")) {
        const json& s = doc["solver"];
        check_keys(s, "solver", {"bracket_factor", "tolerance", "max_iterations", "weights"});
        read(s, "bracket_factor", spec.bracket_factor, "solver");
        read(s, "tolerance", spec.tolerance, "solver");
        read(s, "max_iterations", spec.max_iterations, "solver");
        std::string weights;
        read(s, "weights", weights, "solver");
        if (!weights.empty()) spec.weights = parse_weight_mode(weights);
    }
    if (doc.contains("output")) {
        const json& o = doc["output"];
        check_keys(o, "output", {"csv", "json"});
        read(o, "csv", cfg.csv_path, "output");
        read(o, "json", cfg.json_path, "output");
    }

    spec.validate();
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

} // namespace fasrssi
