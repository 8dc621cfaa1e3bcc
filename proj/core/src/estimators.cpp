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

#include "fasrssi/estimators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fasrssi/errors.hpp"
#include "fasrssi/solve1d.hpp"

namespace fasrssi {
namespace {

std::string normalize_name(std::string_view name) {
    std::string s(name);
    for (char& c : s) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (c == '_') c = '-';
    }
    return s;
}

std::vector<double> mean_profile(const FasLayout& layout, const LinkModel& link, double theta,
                                 double d) {
    std::vector<double> m(layout.n_ports);
    for (int i = 0; i < layout.n_ports; ++i) m[i] = mean_rssi(layout, link, d, theta, i);
    return m;
}

double ls_objective(std::span<const double> x, const FasLayout& layout, const LinkModel& link,
                    double theta, double d) {
    double s = 0.0;
    for (int i = 0; i < layout.n_ports; ++i) {
        const double r = x[i] - mean_rssi(layout, link, d, theta, i);
        s += r * r;
    }
    return s;
}

void check_readings(std::span<const double> x, const FasLayout& layout) {
    if (static_cast<int>(x.size()) != layout.n_ports) {
        throw InputError("estimator: expected " + std::to_string(layout.n_ports) +
                         " readings, got " + std::to_string(x.size()));
    }
}

Estimate solve_ls(std::span<const double> x, const FasLayout& layout, const LinkModel& link,
                  double theta, const EstimatorConfig& cfg) {
    check_readings(x, layout);
    auto f = [&](double d) { return ls_objective(x, layout, link, theta, d); };
    const auto res = solve1d::minimize(f, cfg.d_min, cfg.d_max, cfg.tolerance, cfg.max_iterations);
    Estimate est{res.x, res.converged, res.iterations, res.fx};
    // A minimum pinned to the bracket edge means the bracket missed it.
    if (f(cfg.d_min) <= res.fx || f(cfg.d_max) <= res.fx) est.converged = false;
    return est;
}

Estimate solve_weighted_ml(std::span<const double> x, const FasLayout& layout,
                           const LinkModel& link, double theta, double a, double kappa,
                           const EstimatorConfig& cfg) {
    check_readings(x, layout);
    std::function<double(double)> g;
    std::vector<double> frozen_b;
    if (cfg.weights == WeightMode::Frozen) {
        const double mid = 0.5 * (cfg.d_min + cfg.d_max);
        double sum = 0.0;
        frozen_b.resize(layout.n_ports);
        for (int i = 0; i < layout.n_ports; ++i) {
            frozen_b[i] = dM_dd(layout, mid, theta, i, link.path_loss_exp);
            sum += frozen_b[i];
        }
        for (double& b : frozen_b) b -= kappa * sum;
        g = [&](double d) {
            double s = 0.0;
            for (int i = 0; i < layout.n_ports; ++i) {
                s += frozen_b[i] * (x[i] - mean_rssi(layout, link, d, theta, i));
            }
            return s;
        };
    } else {
        g = [&](double d) { return mle_condition(x, layout, link, theta, kappa, d); };
    }

    // Sign changes on a log grid; each one brackets a root.
    const int points = cfg.root_scan_points;
    const double log_lo = std::log(cfg.d_min);
    const double step = (std::log(cfg.d_max) - log_lo) / (points - 1);
    std::vector<double> grid(points), values(points);
    for (int k = 0; k < points; ++k) {
        grid[k] = k == points - 1 ? cfg.d_max : std::exp(log_lo + step * k);
        values[k] = g(grid[k]);
    }

    const Estimate ls = solve_ls(x, layout, link, theta, cfg);
    int evaluations = points;
    bool found = false;
    Estimate best;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k + 1 < points; ++k) {
        if (values[k] == 0.0 || (values[k] > 0.0) != (values[k + 1] > 0.0)) {
            const auto root = solve1d::find_root(g, grid[k], grid[k + 1], cfg.tolerance,
                                                 cfg.max_iterations);
            evaluations += root.iterations;
            const double gap = std::abs(root.x - ls.d_hat);
            if (gap < best_gap) {
                best_gap = gap;
                best = {root.x, root.converged, 0, 0.0};
                found = true;
            }
        }
    }

    if (!found) {
        // No sign change: report the point where |g| is smallest.
        auto absg = [&](double d) { return std::abs(g(d)); };
        const auto k = static_cast<int>(
            std::min_element(values.begin(), values.end(),
                             [](double p, double q) { return std::abs(p) < std::abs(q); }) -
            values.begin());
        const double lo = grid[std::max(0, k - 1)];
        const double hi = grid[std::min(points - 1, k + 1)];
        const auto res = solve1d::minimize(absg, lo, hi, cfg.tolerance, cfg.max_iterations);
        best = {res.x, false, 0, 0.0};
        evaluations += res.iterations;
    }
    best.iterations = evaluations;
    best.objective_value = mle_objective(x, layout, link, theta, a, best.d_hat);
    return best;
}

} // namespace

std::string_view to_string(EstimatorMethod method) {
    switch (method) {
    case EstimatorMethod::FasMle: return "FAS_MLE";
    case EstimatorMethod::FasLs: return "FAS_LS";
    case EstimatorMethod::MultipointLs: return "MULTIPOINT_LS";
    case EstimatorMethod::SingleAntenna: return "SINGLE_ANTENNA";
    }
    return "UNKNOWN";
}

EstimatorMethod parse_estimator_method(std::string_view name) {
    const std::string s = normalize_name(name);
    if (s == "fas-mle") return EstimatorMethod::FasMle;
    if (s == "fas-ls") return EstimatorMethod::FasLs;
    if (s == "multipoint-ls") return EstimatorMethod::MultipointLs;
    if (s == "single-antenna") return EstimatorMethod::SingleAntenna;
    throw InputError("unknown estimator method '" + std::string(name) + "'");
}

std::string_view to_string(WeightMode mode) {
    return mode == WeightMode::Frozen ? "frozen" : "self-consistent";
}

WeightMode parse_weight_mode(std::string_view name) {
    const std::string s = normalize_name(name);
    if (s == "self-consistent") return WeightMode::SelfConsistent;
    if (s == "frozen") return WeightMode::Frozen;
    throw InputError("unknown weight mode '" + std::string(name) + "'");
}

void EstimatorConfig::validate() const {
    if (!(d_min > 0.0) || !(d_min < d_max) || !std::isfinite(d_max)) {
        throw InputError("estimator: bracket must satisfy 0 < d_min < d_max");
    }
    if (!(tolerance > 0.0)) throw InputError("estimator: tolerance must be > 0");
    if (max_iterations < 1) throw InputError("estimator: max_iterations must be >= 1");
    if (root_scan_points < 2) throw InputError("estimator: root_scan_points must be >= 2");
}

EstimatorConfig bracket_around(EstimatorConfig cfg, double distance, double factor) {
    cfg.d_min = distance / factor;
    cfg.d_max = distance * factor;
    return cfg;
}

double dM_dd(const FasLayout& layout, double d, double theta, int i, double path_loss_exp) {
    if (i < 0 || i >= layout.n_ports) throw InputError("dM_dd: port index out of range");
    const double o = layout.port_offset(i);
    const double c = std::cos(theta);
    const double den = d * d - 2.0 * o * d * c;
    if (den == 0.0 || !std::isfinite(den)) {
        throw NumericalError("dM_dd: vanishing denominator at d = " + std::to_string(d));
    }
    return -(5.0 * path_loss_exp / std::numbers::ln10) * (2.0 * d - 2.0 * o * c) / den;
}

double kappa_constant(double a, int n_ports) {
    if (!(a >= 0.0)) throw InputError("kappa: correlation a must be >= 0");
    if (!(a < 1.0)) throw InputError("kappa: correlation a must be < 1 (singular correlation)");
    const double a2 = a * a;
    return a2 / ((1.0 - a2) * (1.0 + a2 * (n_ports - 1)));
}

WeightVector build_weights(const FasLayout& layout, double a, double d, double theta,
                           double path_loss_exp) {
    WeightVector w;
    w.kappa = kappa_constant(a, layout.n_ports);
    w.b.resize(layout.n_ports);
    double sum = 0.0;
    for (int i = 0; i < layout.n_ports; ++i) {
        w.b[i] = dM_dd(layout, d, theta, i, path_loss_exp);
        sum += w.b[i];
    }
    for (double& b : w.b) b -= w.kappa * sum;
    return w;
}

double mle_condition(std::span<const double> x, const FasLayout& layout, const LinkModel& link,
                     double theta, double kappa, double d) {
    double sum_dm = 0.0, sum_r = 0.0, sum_dm_r = 0.0;
    for (int i = 0; i < layout.n_ports; ++i) {
        const double dm = dM_dd(layout, d, theta, i, link.path_loss_exp);
        const double r = x[i] - mean_rssi(layout, link, d, theta, i);
        sum_dm += dm;
        sum_r += r;
        sum_dm_r += dm * r;
    }
    // sum_i (dm_i - kappa * sum_dm) * r_i
    return sum_dm_r - kappa * sum_dm * sum_r;
}

double mle_objective(std::span<const double> x, const FasLayout& layout, const LinkModel& link,
                     double theta, double a, double d) {
    const double kappa = kappa_constant(a, layout.n_ports);
    const auto m = mean_profile(layout, link, theta, d);
    double sum_r = 0.0, sum_r2 = 0.0;
    for (int i = 0; i < layout.n_ports; ++i) {
        const double r = x[i] - m[i];
        sum_r += r;
        sum_r2 += r * r;
    }
    return (sum_r2 - kappa * sum_r * sum_r) / (1.0 - a * a);
}

Estimate estimate_mle(const MeasurementSet& ms, const LinkModel& link, double theta, double a,
                      const EstimatorConfig& cfg) {
    cfg.validate();
    ms.validate();
    const double kappa = kappa_constant(a, ms.layout.n_ports);
    return solve_weighted_ml(ms.rssi_dbm, ms.layout, link, theta, a, kappa, cfg);
}

Estimate estimate_mle(std::span<const MeasurementSet> snapshots, const LinkModel& link,
                      double theta, double a, const EstimatorConfig& cfg) {
    cfg.validate();
    const auto x = port_means(snapshots);
    const auto& layout = snapshots.front().layout;
    return solve_weighted_ml(x, layout, link, theta, a, kappa_constant(a, layout.n_ports), cfg);
}

Estimate estimate_uncorrelated_ml(const MeasurementSet& ms, const LinkModel& link, double theta,
                                  const EstimatorConfig& cfg) {
    cfg.validate();
    ms.validate();
    return solve_weighted_ml(ms.rssi_dbm, ms.layout, link, theta, 0.0, 0.0, cfg);
}

Estimate estimate_ls(const MeasurementSet& ms, const LinkModel& link, double theta,
                     const EstimatorConfig& cfg) {
    cfg.validate();
    ms.validate();
    return solve_ls(ms.rssi_dbm, ms.layout, link, theta, cfg);
}

Estimate estimate_ls(std::span<const MeasurementSet> snapshots, const LinkModel& link,
                     double theta, const EstimatorConfig& cfg) {
    cfg.validate();
    const auto x = port_means(snapshots);
    return solve_ls(x, snapshots.front().layout, link, theta, cfg);
}

double invert_rssi(double rssi_dbm, const LinkModel& link) {
    // M = 30 + 20 log10 A - 10 n log10 d
    const double log10_d =
        (30.0 + 20.0 * std::log10(link.amplitude) - rssi_dbm) / (10.0 * link.path_loss_exp);
    return std::pow(10.0, log10_d);
}

Estimate estimate_single_antenna(std::span<const MeasurementSet> streams, const LinkModel& link,
                                 const EstimatorConfig& cfg) {
    cfg.validate();
    if (streams.empty()) throw InputError("single antenna: empty measurement stream");
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& ms : streams) {
        ms.validate();
        if (ms.layout.n_ports != 1) throw InputError("single antenna: snapshots must have one port");
        sum += ms.rssi_dbm[0];
        ++count;
    }
    const double mean = sum / static_cast<double>(count);
    Estimate est;
    est.d_hat = invert_rssi(mean, link);
    est.converged = std::isfinite(est.d_hat) && est.d_hat > 0.0;
    est.iterations = 0;
    est.objective_value = 0.0;
    return est;
}

} // namespace fasrssi
