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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fasrssi/channel.hpp"
#include "fasrssi/estimators.hpp"
#include "fasrssi/forward_model.hpp"

namespace fasrssi {

enum class SweepAxis { SnrDb, ApertureW, PortCountN };

std::string_view to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(std::string_view name);

/// Declarative Monte Carlo sweep.
///
/// When the axis is ApertureW and spacing_h is non-empty, each h value forms
/// its own series and the port count follows the aperture:
/// N = max(2, round(W / h)).
struct ExperimentSpec {
    std::string name = "custom";
    SweepAxis axis = SweepAxis::SnrDb;
    std::vector<double> axis_values;

    int n_ports = 12;
    double aperture = 0.5;
    double wavelength = 0.125;
    std::vector<double> spacing_h; ///< port spacing W/N in wavelengths
    double snr_db = 10.0;          ///< used when SNR is not the swept axis

    Scene scene;
    std::vector<EstimatorMethod> estimators;
    CorrelationModel correlation = CorrelationModel::AverageMu;
    /// Correlation between the repeated readings of the single-antenna
    /// baseline. 1 means a static channel: every reading sees the same fade.
    double single_antenna_correlation = 1.0;

    int trials = 10000;
    std::uint64_t base_seed = 42;
    double bracket_factor = 20.0;
    double tolerance = 1e-6;
    int max_iterations = 200;
    WeightMode weights = WeightMode::SelfConsistent;

    /// Execution only; never affects results.
    int workers = 1;

    void validate() const;
    /// Stable text rendering of every result-affecting field.
    std::string canonical() const;
    /// FNV-1a 64 of canonical(), as 16 hex digits.
    std::string hash() const;
};

/// Resolved parameters of one sweep point.
struct SweepPoint {
    double axis_value = 0.0;
    std::optional<double> spacing_h;
    FasLayout layout;
    double snr_db = 0.0;
    double sigma2 = 1.0;
};

std::vector<SweepPoint> sweep_points(const ExperimentSpec& spec);

struct ResultRow {
    double axis_value = 0.0;
    int realized_n = 0;
    std::optional<double> spacing_h;
    double mu2 = 0.0;
    EstimatorMethod estimator = EstimatorMethod::FasMle;
    double nmse_db = 0.0;
    double stderr_db = 0.0;
    int trials = 0;   ///< trials entering the NMSE
    int excluded = 0; ///< non-converged trials left out
    bool flagged = false;
};

struct ResultTable {
    SweepAxis axis = SweepAxis::SnrDb;
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<ResultRow> rows;

    /// Row lookup; spacing must match when given. Returns nullptr if absent.
    const ResultRow* find(double axis_value, EstimatorMethod estimator,
                          std::optional<double> spacing_h = std::nullopt) const;
    /// Rows of one estimator (and series), in axis order.
    std::vector<ResultRow> series(EstimatorMethod estimator,
                                  std::optional<double> spacing_h = std::nullopt) const;
};

/// All estimates of one (sweep point, trial), computed on a single draw.
struct TrialOutcome {
    std::uint64_t draw_digest = 0;
    std::vector<Estimate> estimates; ///< same order as spec.estimators
    std::vector<std::uint64_t> input_digests; ///< draw digest seen by each estimator
};

/// Runs one trial. The FAS, multipoint and single-antenna inputs are all built
/// from the same vector of standard normals.
TrialOutcome run_trial(const ExperimentSpec& spec, const SweepPoint& point,
                       std::uint32_t point_index, std::uint32_t trial);

ResultTable run_experiment(const ExperimentSpec& spec);

/// (NMSE in dB, jackknife standard error in dB) with NMSE = mean((d_hat-d)^2)/d^2.
/// A zero error is floored to -200 dB.
std::pair<double, double> nmse_db(std::span<const Estimate> estimates, double d_true);

/// NMSE(N) - NMSE(2N) for consecutive doublings of a PORT_COUNT_N table.
std::vector<double> doubling_gain(const ResultTable& table, EstimatorMethod estimator,
                                  std::span<const double> port_counts);

/// Interior axis points where the discrete slope changes sign and both
/// neighbouring differences exceed `sigmas` combined standard errors.
std::vector<double> significant_extrema(const std::vector<ResultRow>& series, double sigmas = 2.0);

std::string nmse_convention();
std::string spacing_convention();

ExperimentSpec fig2_preset(std::uint64_t seed = 42, int trials = 10000);
ExperimentSpec fig3_preset(std::uint64_t seed = 42, int trials = 10000);
ExperimentSpec port_doubling_preset(std::uint64_t seed = 42, int trials = 10000);

} // namespace fasrssi
