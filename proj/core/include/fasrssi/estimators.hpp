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

#include <span>
#include <string_view>
#include <vector>

#include "fasrssi/channel.hpp"
#include "fasrssi/forward_model.hpp"

namespace fasrssi {

enum class EstimatorMethod { FasMle, FasLs, MultipointLs, SingleAntenna };

std::string_view to_string(EstimatorMethod method);
/// Accepts "fas-mle", "fas-ls", "multipoint-ls", "single-antenna"
/// (underscores and upper case also accepted).
EstimatorMethod parse_estimator_method(std::string_view name);

/// How the MLE weights b[i] are evaluated while solving for d.
enum class WeightMode {
    SelfConsistent, ///< b[i] re-evaluated at every trial d
    Frozen,         ///< b[i] evaluated once at the bracket midpoint
};

std::string_view to_string(WeightMode mode);
WeightMode parse_weight_mode(std::string_view name);

struct EstimatorConfig {
    EstimatorMethod method = EstimatorMethod::FasMle;
    double d_min = 0.5;
    double d_max = 200.0;
    double tolerance = 1e-6; // meters
    int max_iterations = 200;
    WeightMode weights = WeightMode::SelfConsistent;
    /// Log-spaced points used to locate sign changes of the MLE condition.
    int root_scan_points = 48;

    void validate() const;
};

/// Bracket [d / factor, d * factor] around a known distance.
EstimatorConfig bracket_around(EstimatorConfig cfg, double distance, double factor = 20.0);

struct WeightVector {
    std::vector<double> b;
    double kappa = 0.0;
};

struct Estimate {
    double d_hat = 0.0;
    bool converged = false;
    int iterations = 0;
    double objective_value = 0.0;
};

/// Derivative of the port-i mean RSSI with respect to d, with the o_i^2 term
/// of d_i^2 dropped from the denominator:
///   -(5n / ln 10) * (2d - 2 o_i cos(theta)) / (d^2 - 2 o_i d cos(theta)).
/// For n = 2 the prefactor is 10/ln 10. Throws NumericalError when the
/// denominator vanishes.
double dM_dd(const FasLayout& layout, double d, double theta, int i, double path_loss_exp = 2.0);

/// kappa = a^2 / ((1 - a^2) (1 + a^2 (N - 1))). Requires 0 <= a < 1.
double kappa_constant(double a, int n_ports);

/// b[i] = dM_dd(i) - kappa * sum_j dM_dd(j), evaluated at (d, theta).
WeightVector build_weights(const FasLayout& layout, double a, double d, double theta,
                           double path_loss_exp = 2.0);

/// g(d) = sum_i b[i](d) * (x[i] - M_i(d)); zero at the MLE.
double mle_condition(std::span<const double> x, const FasLayout& layout, const LinkModel& link,
                     double theta, double kappa, double d);

/// (1/(1-a^2)) * [sum r_i^2 - kappa (sum r_i)^2] with r = x - M(d).
double mle_objective(std::span<const double> x, const FasLayout& layout, const LinkModel& link,
                     double theta, double a, double d);

/// Correlated-noise MLE of d for known theta and correlation a = mu^2.
/// Several snapshots are reduced to their port-wise mean before solving.
/// When the condition has several roots in the bracket the one closest to the
/// LS estimate is returned.
Estimate estimate_mle(const MeasurementSet& ms, const LinkModel& link, double theta, double a,
                      const EstimatorConfig& cfg);
Estimate estimate_mle(std::span<const MeasurementSet> snapshots, const LinkModel& link,
                      double theta, double a, const EstimatorConfig& cfg);

/// Same solver with kappa = 0 (independent ports).
Estimate estimate_uncorrelated_ml(const MeasurementSet& ms, const LinkModel& link, double theta,
                                  const EstimatorConfig& cfg);

/// argmin_d sum_i (x[i] - M_i(d))^2 by golden-section/parabolic search.
Estimate estimate_ls(const MeasurementSet& ms, const LinkModel& link, double theta,
                     const EstimatorConfig& cfg);
Estimate estimate_ls(std::span<const MeasurementSet> snapshots, const LinkModel& link,
                     double theta, const EstimatorConfig& cfg);

/// Closed-form inversion of the mean RSSI model: d such that M(d) = rssi.
double invert_rssi(double rssi_dbm, const LinkModel& link);

/// Averages every reading of a stream of one-port snapshots and inverts.
Estimate estimate_single_antenna(std::span<const MeasurementSet> streams, const LinkModel& link,
                                 const EstimatorConfig& cfg);

} // namespace fasrssi
