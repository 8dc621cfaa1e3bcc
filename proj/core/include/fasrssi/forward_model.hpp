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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fasrssi/channel.hpp"
#include "fasrssi/rng.hpp"

namespace fasrssi {

/// Transmitter placement and link budget. Bearing is measured from the
/// port axis.
struct Scene {
    double distance = 10.0;                      // d, meters
    double bearing = 1.0471975511965976;         // theta, radians (pi/3)
    double tx_power_dbm = 0.0;                   // P_T
    double gain_tx = 1.0;                        // G_T, linear
    double gain_rx = 1.0;                        // G_R, linear
    double path_loss_exp = 2.0;                  // n

    /// Throws InputError on d <= 0, non-positive gains or n outside [2, 6].
    void validate() const;
};

/// Soft checks that do not stop a run: currently d >= 10 * W * lambda.
std::vector<std::string> scene_warnings(const FasLayout& layout, const Scene& scene);

/// What the estimators need to evaluate the mean RSSI model.
struct LinkModel {
    double amplitude = 1.0;      // A
    double path_loss_exp = 2.0;  // n
};

/// A = sqrt(P_T * lambda^2 * G_T * G_R) / (4 pi), P_T in watts.
double amplitude_constant(const Scene& scene, double wavelength);
LinkModel link_model(const Scene& scene, double wavelength);

/// d_i = sqrt(o_i^2 + d^2 - 2 o_i d cos(theta)) with o_i = i*W*lambda/N.
/// Throws NumericalError when d_i^2 <= 0.
double port_distance(const FasLayout& layout, double distance, double bearing, int i);
double port_distance(const FasLayout& layout, const Scene& scene, int i);

/// 10*log10(A^2 / d_i^n) + 30, written as 30 - 20*log10(d_i / A) when n == 2.
double rssi_at_distance(double port_dist, const LinkModel& link);

double mean_rssi(const FasLayout& layout, const Scene& scene, int i);
double mean_rssi(const FasLayout& layout, const LinkModel& link, double distance, double bearing,
                 int i);

/// One N-port sweep.
struct MeasurementSet {
    std::vector<double> rssi_dbm;
    FasLayout layout;
    std::optional<Scene> scene_truth;
    double noise_sigma2 = 0.0;

    /// Throws InputError if rssi_dbm.size() != layout.n_ports.
    void validate() const;
};

/// Snapshot t: rssi[i] = mean_rssi(i) + X_t[i] with X_t the t-th row of
/// sample_fading(cov, stream, n_snapshots).
std::vector<MeasurementSet> simulate_measurements(const FasLayout& layout, const Scene& scene,
                                                  const CovarianceMatrix& cov, StreamId stream,
                                                  int n_snapshots);

/// Port-wise mean over snapshots of the same layout.
std::vector<double> port_means(std::span<const MeasurementSet> snapshots);

/// sigma^2 = 10^(-snr_db/10) in dB^2 (sigma = 1 dB at 0 dB SNR).
double snr_to_sigma2(double snr_db);
/// Human-readable statement of the snr_to_sigma2 convention for file headers.
std::string snr_convention();

} // namespace fasrssi
