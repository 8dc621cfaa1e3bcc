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

#include "fasrssi/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "fasrssi/errors.hpp"

#ifndef FASRSSI_VERSION
#define FASRSSI_VERSION "dev"
#endif

namespace fasrssi {
namespace {

constexpr double kNmseFloorDb = -200.0;
constexpr double kFlagRate = 0.05;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t digest(std::span<const double> v) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (double x : v) {
        std::uint64_t bits;
        std::memcpy(&bits, &x, sizeof bits);
        h = fnv1a(&bits, sizeof bits, h);
    }
    return h;
}

double to_db(double ratio) {
    return ratio > 0.0 ? std::max(kNmseFloorDb, 10.0 * std::log10(ratio)) : kNmseFloorDb;
}

bool uses_mle(const ExperimentSpec& spec) {
    return std::find(spec.estimators.begin(), spec.estimators.end(), EstimatorMethod::FasMle) !=
           spec.estimators.end();
}

// Everything about a sweep point that stays fixed across trials.
struct PointContext {
    SweepPoint point;
    LinkModel link;
    FadingSampler sampler;
    std::vector<double> mean;
    double mu2 = 0.0;
    EstimatorConfig cfg;

    PointContext(const ExperimentSpec& spec, const SweepPoint& p)
        : point(p), link(link_model(spec.scene, p.layout.wavelength)),
          sampler(build_covariance(p.layout, spec.correlation, p.sigma2)) {
        mean.resize(p.layout.n_ports);
        for (int i = 0; i < p.layout.n_ports; ++i) mean[i] = mean_rssi(p.layout, spec.scene, i);
        mu2 = average_mu_squared(p.layout);
        cfg.tolerance = spec.tolerance;
        cfg.max_iterations = spec.max_iterations;
        cfg.weights = spec.weights;
        cfg = bracket_around(cfg, spec.scene.distance, spec.bracket_factor);
        if (uses_mle(spec) && !(mu2 < 1.0)) {
            throw ModelValidityError("experiment: mu^2 = 1 at N = " +
                                     std::to_string(p.layout.n_ports) + ", W = " +
                                     fmt17(p.layout.aperture) + "; the MLE is undefined");
        }
    }
};

TrialOutcome trial_with_context(const ExperimentSpec& spec, const PointContext& ctx,
                                std::uint32_t point_index, std::uint32_t trial) {
    const FasLayout& layout = ctx.point.layout;
    const int n = layout.n_ports;
    const double sigma = std::sqrt(ctx.point.sigma2);

    CounterRng rng(trial_stream(spec.base_seed, point_index, trial));
    std::vector<double> white(n);
    for (double& z : white) z = rng.standard_normal();

    TrialOutcome out;
    out.draw_digest = digest(white);

    std::vector<double> fading(n);
    ctx.sampler.color(white, fading);

    MeasurementSet fas;
    fas.layout = layout;
    fas.noise_sigma2 = ctx.point.sigma2;
    fas.rssi_dbm.resize(n);
    for (int i = 0; i < n; ++i) fas.rssi_dbm[i] = ctx.mean[i] + fading[i];

    const double theta = spec.scene.bearing;
    for (EstimatorMethod method : spec.estimators) {
        EstimatorConfig cfg = ctx.cfg;
        cfg.method = method;
        Estimate est;
        switch (method) {
        case EstimatorMethod::FasMle:
            est = estimate_mle(fas, ctx.link, theta, ctx.mu2, cfg);
            break;
        case EstimatorMethod::FasLs:
            est = estimate_ls(fas, ctx.link, theta, cfg);
            break;
        case EstimatorMethod::MultipointLs: {
            MeasurementSet mp = fas;
            for (int i = 0; i < n; ++i) mp.rssi_dbm[i] = ctx.mean[i] + sigma * white[i];
            est = estimate_ls(mp, ctx.link, theta, cfg);
            break;
        }
        case EstimatorMethod::SingleAntenna: {
            // n readings at the reference port, sharing sqrt(rho) of the
            // port-0 fade.
            const double rho = spec.single_antenna_correlation;
            const double common = std::sqrt(rho) * white[0];
            const double own = std::sqrt(1.0 - rho);
            CounterRng extra(rng);
            FasLayout single = layout;
            single.n_ports = 1;
            std::vector<MeasurementSet> stream(n);
            for (int t = 0; t < n; ++t) {
                const double e = own > 0.0 ? own * extra.standard_normal() : 0.0;
                stream[t].layout = single;
                stream[t].noise_sigma2 = ctx.point.sigma2;
                stream[t].rssi_dbm = {ctx.mean[0] + sigma * (common + e)};
            }
            est = estimate_single_antenna(stream, ctx.link, cfg);
            break;
        }
        }
        out.estimates.push_back(est);
        out.input_digests.push_back(out.draw_digest);
    }
    return out;
}

} // namespace

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::SnrDb: return "snr_db";
    case SweepAxis::ApertureW: return "aperture_w";
    case SweepAxis::PortCountN: return "port_count_n";
    }
    return "unknown";
}

SweepAxis parse_sweep_axis(std::string_view name) {
    if (name == "snr_db" || name == "SNR_DB") return SweepAxis::SnrDb;
    if (name == "aperture_w" || name == "APERTURE_W") return SweepAxis::ApertureW;
    if (name == "port_count_n" || name == "PORT_COUNT_N") return SweepAxis::PortCountN;
    throw InputError("unknown sweep axis '" + std::string(name) + "'");
}

void ExperimentSpec::validate() const {
    if (axis_values.empty()) throw InputError("experiment: axis_values is empty");
    for (std::size_t i = 0; i < axis_values.size(); ++i) {
        if (!std::isfinite(axis_values[i])) throw InputError("experiment: non-finite axis value");
        if (i > 0 && !(axis_values[i] > axis_values[i - 1])) {
            throw InputError("experiment: axis_values must be strictly increasing");
        }
    }
    if (trials < 100) throw InputError("experiment: trials must be >= 100");
    if (estimators.empty()) throw InputError("experiment: no estimators");
    if (!spacing_h.empty() && axis != SweepAxis::ApertureW) {
        throw InputError("experiment: spacing_h applies only to an aperture_w sweep");
    }
    for (double h : spacing_h) {
        if (!(h > 0.0)) throw InputError("experiment: spacing_h values must be > 0");
    }
    if (axis == SweepAxis::PortCountN) {
        for (double v : axis_values) {
            if (v != std::round(v) || v < 2) {
                throw InputError("experiment: port counts must be integers >= 2");
            }
        }
    }
    if (axis == SweepAxis::ApertureW) {
        for (double v : axis_values) {
            if (!(v >= 0.0)) throw InputError("experiment: apertures must be >= 0");
        }
    }
    if (!(single_antenna_correlation >= 0.0 && single_antenna_correlation <= 1.0)) {
        throw InputError("experiment: single_antenna_correlation must lie in [0, 1]");
    }
    if (!(bracket_factor > 1.0)) throw InputError("experiment: bracket_factor must be > 1");
    if (workers < 1) throw InputError("experiment: workers must be >= 1");
    scene.validate();
    FasLayout{n_ports, aperture, wavelength}.validate(2);
}

std::string ExperimentSpec::canonical() const {
    std::ostringstream os;
    os << "name=" << name << ";axis=" << to_string(axis) << ";values=";
    for (double v : axis_values) os << fmt17(v) << ',';
    os << ";n=" << n_ports << ";w=" << fmt17(aperture) << ";lambda=" << fmt17(wavelength)
       << ";h=";
    for (double h : spacing_h) os << fmt17(h) << ',';
    os << ";snr=" << fmt17(snr_db) << ";d=" << fmt17(scene.distance)
       << ";theta=" << fmt17(scene.bearing) << ";pt=" << fmt17(scene.tx_power_dbm)
       << ";gt=" << fmt17(scene.gain_tx) << ";gr=" << fmt17(scene.gain_rx)
       << ";ple=" << fmt17(scene.path_loss_exp) << ";est=";
    for (auto e : estimators) os << to_string(e) << ',';
    os << ";corr=" << to_string(correlation) << ";single_rho=" << fmt17(single_antenna_correlation)
       << ";trials=" << trials << ";seed=" << base_seed << ";bracket=" << fmt17(bracket_factor)
       << ";tol=" << fmt17(tolerance) << ";maxit=" << max_iterations
       << ";weights=" << to_string(weights);
    return os.str();
}

std::string ExperimentSpec::hash() const {
    const std::string c = canonical();
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(c.data(), c.size())));
    return buf;
}

std::vector<SweepPoint> sweep_points(const ExperimentSpec& spec) {
    std::vector<std::optional<double>> series;
    if (spec.spacing_h.empty()) {
        series.push_back(std::nullopt);
    } else {
        for (double h : spec.spacing_h) series.emplace_back(h);
    }
    std::vector<SweepPoint> out;
    for (const auto& h : series) {
        for (double v : spec.axis_values) {
            SweepPoint p;
            p.axis_value = v;
            p.spacing_h = h;
            p.layout = {spec.n_ports, spec.aperture, spec.wavelength};
            p.snr_db = spec.snr_db;
            switch (spec.axis) {
            case SweepAxis::SnrDb: p.snr_db = v; break;
            case SweepAxis::PortCountN: p.layout.n_ports = static_cast<int>(v); break;
            case SweepAxis::ApertureW:
                p.layout.aperture = v;
                if (h) p.layout.n_ports = std::max(2, static_cast<int>(std::lround(v / *h)));
                break;
            }
            p.sigma2 = snr_to_sigma2(p.snr_db);
            out.push_back(p);
        }
    }
    return out;
}

TrialOutcome run_trial(const ExperimentSpec& spec, const SweepPoint& point,
                       std::uint32_t point_index, std::uint32_t trial) {
    const PointContext ctx(spec, point);
    return trial_with_context(spec, ctx, point_index, trial);
}

std::pair<double, double> nmse_db(std::span<const Estimate> estimates, double d_true) {
    if (estimates.empty()) throw InputError("nmse_db: no estimates");
    if (!(d_true > 0.0)) throw InputError("nmse_db: d_true must be > 0");
    const std::size_t n = estimates.size();
    const double d2 = d_true * d_true;
    std::vector<double> sq(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = estimates[i].d_hat - d_true;
        sq[i] = e * e;
        total += sq[i];
    }
    const double nmse = to_db(total / static_cast<double>(n) / d2);
    if (n < 2) return {nmse, 0.0};

    // Leave-one-out replicates of the dB statistic.
    std::vector<double> loo(n);
    double loo_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double rest = std::max(0.0, total - sq[i]);
        loo[i] = to_db(rest / static_cast<double>(n - 1) / d2);
        loo_mean += loo[i];
    }
    loo_mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
    const double se = std::sqrt(static_cast<double>(n - 1) / static_cast<double>(n) * ss);
    return {nmse, std::isfinite(se) ? se : 0.0};
}

ResultTable run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const auto points = sweep_points(spec);
    std::vector<PointContext> contexts;
    contexts.reserve(points.size());
    for (const auto& p : points) contexts.emplace_back(spec, p);

    const std::size_t n_est = spec.estimators.size();
    const std::size_t trials = static_cast<std::size_t>(spec.trials);
    const std::size_t total = points.size() * trials;
    std::vector<Estimate> results(total * n_est);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t item = next.fetch_add(1);
            if (item >= total) return;
            const std::size_t p = item / trials;
            const std::size_t t = item % trials;
            try {
                auto outcome = trial_with_context(spec, contexts[p], static_cast<std::uint32_t>(p),
                                                  static_cast<std::uint32_t>(t));
                std::copy(outcome.estimates.begin(), outcome.estimates.end(),
                          results.begin() + static_cast<std::ptrdiff_t>(item * n_est));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(total);
                return;
            }
        }
    };
    const int workers = std::max(1, std::min<int>(spec.workers, static_cast<int>(total)));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    ResultTable table;
    table.axis = spec.axis;
    std::string est_list;
    for (auto e : spec.estimators) est_list += std::string(est_list.empty() ? "" : ",") +
                                               std::string(to_string(e));
    table.header = {
        {"generator", "fasrssi " FASRSSI_VERSION},
        {"experiment", spec.name},
        {"spec_hash", spec.hash()},
        {"base_seed", std::to_string(spec.base_seed)},
        {"trials", std::to_string(spec.trials)},
        {"sweep_axis", std::string(to_string(spec.axis))},
        {"correlation_model", std::string(to_string(spec.correlation))},
        {"estimators", est_list},
        {"mle_weights", std::string(to_string(spec.weights))},
        {"scene", "d=" + fmt17(spec.scene.distance) + " theta=" + fmt17(spec.scene.bearing) +
                      " tx_power_dbm=" + fmt17(spec.scene.tx_power_dbm) +
                      " gain_tx=" + fmt17(spec.scene.gain_tx) +
                      " gain_rx=" + fmt17(spec.scene.gain_rx) +
                      " path_loss_exp=" + fmt17(spec.scene.path_loss_exp)},
        {"wavelength", fmt17(spec.wavelength)},
        {"single_antenna_correlation", fmt17(spec.single_antenna_correlation)},
        {"snr_convention", snr_convention()},
        {"nmse_formula", nmse_convention()},
        {"port_spacing", spacing_convention()},
    };

    std::vector<Estimate> kept;
    kept.reserve(trials);
    for (std::size_t p = 0; p < points.size(); ++p) {
        for (std::size_t e = 0; e < n_est; ++e) {
            kept.clear();
            int excluded = 0;
            for (std::size_t t = 0; t < trials; ++t) {
                const Estimate& est = results[(p * trials + t) * n_est + e];
                if (est.converged && std::isfinite(est.d_hat)) {
                    kept.push_back(est);
                } else {
                    ++excluded;
                }
            }
            ResultRow row;
            row.axis_value = points[p].axis_value;
            row.realized_n = points[p].layout.n_ports;
            row.spacing_h = points[p].spacing_h;
            row.mu2 = contexts[p].mu2;
            row.estimator = spec.estimators[e];
            row.trials = static_cast<int>(kept.size());
            row.excluded = excluded;
            row.flagged = excluded > kFlagRate * static_cast<double>(trials);
            if (!kept.empty()) {
                std::tie(row.nmse_db, row.stderr_db) = nmse_db(kept, spec.scene.distance);
            } else {
                row.nmse_db = std::nan("");
                row.stderr_db = 0.0;
            }
            table.rows.push_back(row);
        }
    }
    return table;
}

const ResultRow* ResultTable::find(double axis_value, EstimatorMethod estimator,
                                   std::optional<double> spacing_h) const {
    for (const auto& r : rows) {
        if (r.estimator != estimator || std::abs(r.axis_value - axis_value) > 1e-12) continue;
        if (spacing_h && (!r.spacing_h || std::abs(*r.spacing_h - *spacing_h) > 1e-12)) continue;
        return &r;
    }
    return nullptr;
}

std::vector<ResultRow> ResultTable::series(EstimatorMethod estimator,
                                           std::optional<double> spacing_h) const {
    std::vector<ResultRow> out;
    for (const auto& r : rows) {
        if (r.estimator != estimator) continue;
        if (spacing_h && (!r.spacing_h || std::abs(*r.spacing_h - *spacing_h) > 1e-12)) continue;
        out.push_back(r);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const ResultRow& a, const ResultRow& b) { return a.axis_value < b.axis_value; });
    return out;
}

std::vector<double> doubling_gain(const ResultTable& table, EstimatorMethod estimator,
                                  std::span<const double> port_counts) {
    if (table.axis != SweepAxis::PortCountN) {
        throw InputError("doubling_gain: table is not a port-count sweep");
    }
    if (port_counts.size() < 2) throw InputError("doubling_gain: need at least two port counts");
    std::vector<double> gains;
    for (std::size_t i = 0; i + 1 < port_counts.size(); ++i) {
        if (port_counts[i + 1] != 2.0 * port_counts[i]) {
            throw InputError("doubling_gain: port counts must double at every step");
        }
        const ResultRow* lo = table.find(port_counts[i], estimator);
        const ResultRow* hi = table.find(port_counts[i + 1], estimator);
        if (!lo || !hi) {
            throw InputError("doubling_gain: missing axis point N = " +
                             fmt17(lo ? port_counts[i + 1] : port_counts[i]));
        }
        gains.push_back(lo->nmse_db - hi->nmse_db);
    }
    return gains;
}

std::vector<double> significant_extrema(const std::vector<ResultRow>& series, double sigmas) {
    std::vector<double> out;
    for (std::size_t j = 1; j + 1 < series.size(); ++j) {
        const auto& a = series[j - 1];
        const auto& b = series[j];
        const auto& c = series[j + 1];
        const double left = b.nmse_db - a.nmse_db;
        const double right = c.nmse_db - b.nmse_db;
        const double se_left = std::hypot(a.stderr_db, b.stderr_db);
        const double se_right = std::hypot(b.stderr_db, c.stderr_db);
        const bool sign_change = (left > 0.0) != (right > 0.0);
        if (sign_change && std::abs(left) > sigmas * se_left &&
            std::abs(right) > sigmas * se_right) {
            out.push_back(b.axis_value);
        }
    }
    return out;
}

std::string nmse_convention() {
    return "NMSE_dB = 10*log10(mean((d_hat - d)^2) / d^2), floor -200 dB; stderr = jackknife "
           "over trials; non-converged trials excluded and counted";
}

std::string spacing_convention() {
    return "correlation lag spacing W/(N-1) wavelengths; ranging geometry port i at i*W*lambda/N";
}

ExperimentSpec fig2_preset(std::uint64_t seed, int trials) {
    ExperimentSpec spec;
    spec.name = "fig2";
    spec.axis = SweepAxis::SnrDb;
    spec.axis_values = {0, 5, 10, 15, 20, 25, 30};
    spec.n_ports = 12;
    spec.aperture = 0.5;
    spec.estimators = {EstimatorMethod::FasMle, EstimatorMethod::FasLs,
                       EstimatorMethod::MultipointLs, EstimatorMethod::SingleAntenna};
    spec.trials = trials;
    spec.base_seed = seed;
    return spec;
}

ExperimentSpec fig3_preset(std::uint64_t seed, int trials) {
    ExperimentSpec spec;
    spec.name = "fig3";
    spec.axis = SweepAxis::ApertureW;
    spec.axis_values.clear();
    for (int k = 2; k <= 20; ++k) spec.axis_values.push_back(k / 20.0);
    spec.spacing_h = {0.05, 0.01};
    spec.snr_db = 10.0;
    spec.estimators = {EstimatorMethod::FasLs};
    spec.trials = trials;
    spec.base_seed = seed;
    return spec;
}

ExperimentSpec port_doubling_preset(std::uint64_t seed, int trials) {
    ExperimentSpec spec;
    spec.name = "port-doubling";
    spec.axis = SweepAxis::PortCountN;
    spec.axis_values = {3, 6, 12, 24};
    spec.aperture = 0.5;
    spec.snr_db = 10.0;
    spec.estimators = {EstimatorMethod::FasLs, EstimatorMethod::MultipointLs};
    spec.trials = trials;
    spec.base_seed = seed;
    return spec;
}

} // namespace fasrssi
