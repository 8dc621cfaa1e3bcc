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

#include "fasrssi/forward_model.hpp"

#include <cmath>
#include <numbers>

#include "fasrssi/errors.hpp"

namespace fasrssi {

void Scene::validate() const {
    if (!(distance > 0.0) || !std::isfinite(distance)) {
        throw InputError("scene: distance must be finite and > 0");
    }
    if (!std::isfinite(bearing)) throw InputError("scene: bearing must be finite");
    if (!std::isfinite(tx_power_dbm)) throw InputError("scene: tx_power_dbm must be finite");
    if (!(gain_tx > 0.0) || !(gain_rx > 0.0)) throw InputError("scene: antenna gains must be > 0");
    if (!(path_loss_exp >= 2.0 && path_loss_exp <= 6.0)) {
        throw InputError("scene: path_loss_exp must lie in [2, 6]");
    }
}

std::vector<std::string> scene_warnings(const FasLayout& layout, const Scene& scene) {
    std::vector<std::string> out;
    const double span = layout.aperture * layout.wavelength;
    if (span > 0.0 && scene.distance < 10.0 * span) {
        out.push_back("distance " + std::to_string(scene.distance) +
                      " m is less than 10x the aperture (" + std::to_string(span) +
                      " m); the equivalent multipoint model assumes d >> W*lambda");
    }
    return out;
}

double amplitude_constant(const Scene& scene, double wavelength) {
    const double p_watts = std::pow(10.0, (scene.tx_power_dbm - 30.0) / 10.0);
    return std::sqrt(p_watts * wavelength * wavelength * scene.gain_tx * scene.gain_rx) /
           (4.0 * std::numbers::pi);
}

LinkModel link_model(const Scene& scene, double wavelength) {
    return {amplitude_constant(scene, wavelength), scene.path_loss_exp};
}

double port_distance(const FasLayout& layout, double distance, double bearing, int i) {
    if (i < 0 || i >= layout.n_ports) {
        throw InputError("port_distance: port index " + std::to_string(i) + " out of range");
    }
    const double o = layout.port_offset(i);
    const double d2 = o * o + distance * distance - 2.0 * o * distance * std::cos(bearing);
    if (!(d2 > 0.0)) {
        throw NumericalError("port_distance: transmitter coincides with port " + std::to_string(i));
    }
    return std::sqrt(d2);
}

double port_distance(const FasLayout& layout, const Scene& scene, int i) {
    return port_distance(layout, scene.distance, scene.bearing, i);
}

double rssi_at_distance(double port_dist, const LinkModel& link) {
    if (link.path_loss_exp == 2.0) return 30.0 - 20.0 * std::log10(port_dist / link.amplitude);
    return 10.0 * std::log10(link.amplitude * link.amplitude /
                             std::pow(port_dist, link.path_loss_exp)) +
           30.0;
}

double mean_rssi(const FasLayout& layout, const LinkModel& link, double distance, double bearing,
                 int i) {
    return rssi_at_distance(port_distance(layout, distance, bearing, i), link);
}

double mean_rssi(const FasLayout& layout, const Scene& scene, int i) {
    return mean_rssi(layout, link_model(scene, layout.wavelength), scene.distance, scene.bearing,
                     i);
}

void MeasurementSet::validate() const {
    if (static_cast<int>(rssi_dbm.size()) != layout.n_ports) {
        throw InputError("measurement: expected " + std::to_string(layout.n_ports) +
                         " readings, got " + std::to_string(rssi_dbm.size()));
    }
}

std::vector<MeasurementSet> simulate_measurements(const FasLayout& layout, const Scene& scene,
                                                  const CovarianceMatrix& cov, StreamId stream,
                                                  int n_snapshots) {
    layout.validate(1);
    scene.validate();
    if (cov.dim() != layout.n_ports) {
        throw InputError("simulate_measurements: covariance dimension " +
                         std::to_string(cov.dim()) + " != n_ports " +
                         std::to_string(layout.n_ports));
    }
    const Eigen::MatrixXd fading = sample_fading(cov, stream, n_snapshots);
    std::vector<double> mean(layout.n_ports);
    for (int i = 0; i < layout.n_ports; ++i) mean[i] = mean_rssi(layout, scene, i);

    std::vector<MeasurementSet> out;
    out.reserve(n_snapshots);
    for (int t = 0; t < n_snapshots; ++t) {
        MeasurementSet ms;
        ms.layout = layout;
        ms.scene_truth = scene;
        ms.noise_sigma2 = cov.sigma2;
        ms.rssi_dbm.resize(layout.n_ports);
        for (int i = 0; i < layout.n_ports; ++i) ms.rssi_dbm[i] = mean[i] + fading(t, i);
        out.push_back(std::move(ms));
    }
    return out;
}

std::vector<double> port_means(std::span<const MeasurementSet> snapshots) {
    if (snapshots.empty()) throw InputError("port_means: no snapshots");
    const int n = snapshots.front().layout.n_ports;
    std::vector<double> mean(n, 0.0);
    for (const auto& ms : snapshots) {
        ms.validate();
        if (ms.layout.n_ports != n) throw InputError("port_means: mixed port counts");
        for (int i = 0; i < n; ++i) mean[i] += ms.rssi_dbm[i];
    }
    for (double& v : mean) v /= static_cast<double>(snapshots.size());
    return mean;
}

double snr_to_sigma2(double snr_db) {
    return std::pow(10.0, -snr_db / 10.0);
}

std::string snr_convention() {
    return "SNR_dB = -10*log10(sigma^2), sigma^2 = shadow-fading variance in dB^2 "
           "(sigma = 1 dB at 0 dB SNR)";
}

} // namespace fasrssi
