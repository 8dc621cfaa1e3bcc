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

#pragma once

#include <string>

#include "fasrssi/experiments.hpp"

namespace fasrssi {

/// Declarative run file. JSON with nested sections; every key is optional
/// except where a preset cannot supply it, and unknown keys are rejected:
///
///     {
///       "preset": "fig2",                       // fig2 | fig3 | port-doubling
///       "name": "my-sweep",
///       "sweep":   {"axis": "snr_db", "values": [0, 10, 20]},
///       "layout":  {"n_ports": 12, "aperture": 0.5, "wavelength": 0.125,
///                   "spacing_h": [0.01]},
///       "scene":   {"distance": 10, "bearing": 1.047, "tx_power_dbm": 0,
///                   "gain_tx": 1, "gain_rx": 1, "path_loss_exp": 2},
///       "channel": {"model": "average-mu", "snr_db": 10,
///                   "single_antenna_correlation": 1.0},
///       "estimators": ["fas-mle", "fas-ls", "multipoint-ls", "single-antenna"],
///       "solver":  {"bracket_factor": 20, "tolerance": 1e-6,
///                   "max_iterations": 200, "weights": "self-consistent"},
///       "trials": 2000, "seed": 42, "workers": 4,
///       "output":  {"csv": "out.csv", "json": "out.json"}
///     }
struct RunConfig {
    ExperimentSpec spec;
    std::string csv_path;
    std::string json_path;
};

/// Throws InputError on syntax errors, wrong types, unknown keys or a spec
/// that fails ExperimentSpec::validate().
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

ExperimentSpec preset_by_name(const std::string& name, std::uint64_t seed, int trials);

} // namespace fasrssi
