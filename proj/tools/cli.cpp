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

#include "cli.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fasrssi/channel.hpp"
#include "fasrssi/errors.hpp"
#include "fasrssi/estimators.hpp"
#include "fasrssi/experiments.hpp"
#include "fasrssi/measurement_io.hpp"
#include "fasrssi/result_io.hpp"
#include "fasrssi/run_config.hpp"

namespace fasrssi::cli {
namespace {

using nlohmann::ordered_json;

// JSON has no infinities; they become null.
ordered_json num(double v) {
    return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

int default_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

ordered_json summarize(const ExperimentSpec& spec, const ResultTable& table) {
    ordered_json s;
    s["experiment"] = spec.name;
    s["rows"] = table.rows.size();
    s["spec_hash"] = spec.hash();
    auto gap = [&](double at, EstimatorMethod hi, EstimatorMethod lo) -> ordered_json {
        const auto* a = table.find(at, hi);
        const auto* b = table.find(at, lo);
        return a && b ? num(a->nmse_db - b->nmse_db) : ordered_json(nullptr);
    };
    switch (spec.axis) {
    case SweepAxis::SnrDb:
        s["snr_db"] = 10;
        s["single_minus_mle_db"] =
            gap(10.0, EstimatorMethod::SingleAntenna, EstimatorMethod::FasMle);
        s["fas_ls_minus_multipoint_db"] =
            gap(10.0, EstimatorMethod::FasLs, EstimatorMethod::MultipointLs);
        s["mle_minus_ls_db"] = gap(10.0, EstimatorMethod::FasMle, EstimatorMethod::FasLs);
        break;
    case SweepAxis::PortCountN:
        for (auto e : spec.estimators) {
            try {
                s["doubling_gain_db"][std::string(to_string(e))] =
                    doubling_gain(table, e, spec.axis_values);
            } catch (const InputError&) {
                // not a pure doubling sweep
            }
        }
        break;
    case SweepAxis::ApertureW:
        for (auto e : spec.estimators) {
            if (spec.spacing_h.empty()) {
                s["extrema_w"][std::string(to_string(e))] =
                    significant_extrema(table.series(e));
            } else {
                for (double h : spec.spacing_h) {
                    std::ostringstream key;
                    key << to_string(e) << "@h=" << h;
                    s["extrema_w"][key.str()] = significant_extrema(table.series(e, h));
                }
            }
        }
        break;
    }
    return s;
}

int run_spec(const ExperimentSpec& spec, const std::string& csv_path,
             const std::string& json_path, std::ostream& out, std::ostream& err) {
    for (const auto& w : scene_warnings({spec.n_ports, spec.aperture, spec.wavelength}, spec.scene)) {
        err << "warning: " << w << '\n';
    }
    const ResultTable table = run_experiment(spec);
    if (!json_path.empty()) write_json_file(json_path, table);
    const ordered_json summary = summarize(spec, table);
    if (csv_path.empty()) {
        write_csv(out, table);
        err << summary.dump() << '\n';
    } else {
        write_csv_file(csv_path, table);
        out << summary.dump() << '\n';
    }
    for (const auto& r : table.rows) {
        if (r.flagged) {
            err << "warning: " << to_string(r.estimator) << " at " << to_string(spec.axis)
                << "=" << r.axis_value << " excluded " << r.excluded
                << " non-converged trials\n";
        }
    }
    return kOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"fasrssi: RSSI ranging with fluid antenna systems"};
    app.set_help_all_flag("--help-all");

    std::string config_path;
    app.add_option("--config", config_path, "Run a declarative JSON experiment file");

    // reproduce
    auto* reproduce = app.add_subcommand("reproduce", "Run a built-in sweep preset");
    std::string preset;
    std::uint64_t seed = 42;
    int trials = 10000;
    std::string out_path, json_path;
    int workers = default_workers();
    std::string weights = "self-consistent";
    reproduce->add_option("preset", preset, "fig2 | fig3 | port-doubling")
        ->required()
        ->check(CLI::IsMember({"fig2", "fig3", "port-doubling"}));
    reproduce->add_option("--seed", seed, "Base seed")->capture_default_str();
    reproduce->add_option("--trials", trials, "Monte Carlo trials per sweep point")
        ->capture_default_str();
    reproduce->add_option("--out", out_path, "CSV output path (stdout if omitted)");
    reproduce->add_option("--json", json_path, "Also write the table as JSON");
    reproduce->add_option("--workers", workers, "Worker threads")->capture_default_str();
    reproduce->add_option("--weights", weights, "MLE weights: self-consistent | frozen")
        ->capture_default_str();

    // run
    auto* run_cmd = app.add_subcommand("run", "Run an experiment described by a config file");
    std::string run_config;
    std::string run_out, run_json;
    std::optional<int> run_workers;
    run_cmd->add_option("--config", run_config, "JSON experiment file")->required();
    run_cmd->add_option("--out", run_out, "CSV output path (overrides the file)");
    run_cmd->add_option("--json", run_json, "JSON output path (overrides the file)");
    run_cmd->add_option("--workers", run_workers, "Worker threads");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Estimate distance from a measurement file");
    std::string input;
    double theta = 0.0;
    int n_ports = 0;
    double aperture = 0.0;
    double wavelength = 0.125;
    double amp = 0.0;
    double path_loss = 2.0;
    std::string method = "fas-mle";
    std::optional<double> mu2_override;
    double d_min = 0.1, d_max = 1000.0, tolerance = 1e-6;
    estimate->add_option("--input", input, "Measurement file")->required();
    estimate->add_option("--theta", theta, "Known bearing in radians")->required();
    estimate->add_option("--n-ports", n_ports, "Ports per snapshot")->required();
    estimate->add_option("--aperture", aperture, "Normalized aperture W")->capture_default_str();
    estimate->add_option("--wavelength", wavelength, "Wavelength in meters")
        ->capture_default_str();
    estimate->add_option("--amp-const", amp, "Link amplitude constant A")->required();
    estimate->add_option("--path-loss-exp", path_loss, "Path-loss exponent")
        ->capture_default_str();
    estimate->add_option("--method", method,
                         "fas-mle | fas-ls | multipoint-ls | single-antenna")
        ->capture_default_str();
    estimate->add_option("--mu2", mu2_override, "Override the average correlation mu^2");
    estimate->add_option("--d-min", d_min, "Search bracket lower end (m)")->capture_default_str();
    estimate->add_option("--d-max", d_max, "Search bracket upper end (m)")->capture_default_str();
    estimate->add_option("--tolerance", tolerance, "Distance tolerance (m)")
        ->capture_default_str();
    estimate->add_option("--weights", weights, "MLE weights: self-consistent | frozen")
        ->capture_default_str();

    // inspect
    auto* inspect = app.add_subcommand("inspect", "Print correlation-model diagnostics");
    int inspect_n = 0;
    double inspect_w = 0.0;
    std::string model = "average-mu";
    inspect->add_option("--n-ports", inspect_n, "Port count N")->required();
    inspect->add_option("--aperture", inspect_w, "Normalized aperture W")->required();
    inspect->add_option("--model", model, "average-mu | jakes | independent")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (reproduce->parsed()) {
            ExperimentSpec spec = preset_by_name(preset, seed, trials);
            spec.workers = workers;
            spec.weights = parse_weight_mode(weights);
            return run_spec(spec, out_path, json_path, out, err);
        }
        if (run_cmd->parsed() || !config_path.empty()) {
            RunConfig cfg = load_run_config(run_cmd->parsed() ? run_config : config_path);
            if (run_workers) cfg.spec.workers = *run_workers;
            if (!run_out.empty()) cfg.csv_path = run_out;
            if (!run_json.empty()) cfg.json_path = run_json;
            return run_spec(cfg.spec, cfg.csv_path, cfg.json_path, out, err);
        }
        if (estimate->parsed()) {
            const EstimatorMethod m = parse_estimator_method(method);
            const FasLayout layout{n_ports, aperture, wavelength};
            layout.validate(1);
            if (m == EstimatorMethod::SingleAntenna && n_ports != 1) {
                throw InputError("single-antenna estimation needs --n-ports 1");
            }
            if (!(amp > 0.0)) throw InputError("--amp-const must be > 0");
            const auto snapshots = read_measurements_file(input, layout);
            const LinkModel link{amp, path_loss};
            EstimatorConfig cfg;
            cfg.method = m;
            cfg.d_min = d_min;
            cfg.d_max = d_max;
            cfg.tolerance = tolerance;
            cfg.weights = parse_weight_mode(weights);

            ordered_json result;
            result["method"] = std::string(to_string(m));
            result["snapshots"] = snapshots.size();
            Estimate est;
            switch (m) {
            case EstimatorMethod::FasMle: {
                const double a = mu2_override ? *mu2_override : average_mu_squared(layout);
                result["mu2"] = a;
                est = estimate_mle(snapshots, link, theta, a, cfg);
                break;
            }
            case EstimatorMethod::FasLs:
            case EstimatorMethod::MultipointLs:
                est = estimate_ls(snapshots, link, theta, cfg);
                break;
            case EstimatorMethod::SingleAntenna:
                est = estimate_single_antenna(snapshots, link, cfg);
                break;
            }
            result["d_hat"] = num(est.d_hat);
            result["converged"] = est.converged;
            result["objective_value"] = num(est.objective_value);
            result["iterations"] = est.iterations;
            out << result.dump() << '\n';
            if (!est.converged) {
                err << "error: estimator did not converge; best-effort estimate printed\n";
                return kNotConverged;
            }
            return kOk;
        }
        if (inspect->parsed()) {
            const FasLayout layout{inspect_n, inspect_w, 1.0};
            const CorrelationModel cm = parse_correlation_model(model);
            layout.validate(2);
            const double mu2 = average_mu_squared(layout);
            const CovarianceMatrix cov = build_covariance(layout, cm, 1.0);
            const Eigen::VectorXd eig = correlation_eigenvalues(cov);
            ordered_json j;
            j["n_ports"] = inspect_n;
            j["aperture"] = inspect_w;
            j["model"] = std::string(to_string(cm));
            j["mu2"] = mu2;
            j["kappa"] = mu2 < 1.0 ? num(kappa_constant(mu2, inspect_n)) : ordered_json(nullptr);
            j["eigen_min"] = eig(0);
            j["eigen_max"] = eig(eig.size() - 1);
            j["regularized"] = cov.regularized;
            j["regularization_shift"] = cov.regularization_shift;
            // correlation of port 0 with port k
            std::vector<double> profile(inspect_n);
            for (int k = 0; k < inspect_n; ++k) profile[k] = cov.correlation(0, k);
            profile[0] = 1.0;
            j["profile"] = profile;
            out << j.dump() << '\n';
            return kOk;
        }
        out << app.help();
        return kInputError;
    } catch (const ModelValidityError& e) {
        err << "error: " << e.what() << '\n';
        return kModelValidity;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return kNotConverged;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

} // namespace fasrssi::cli
