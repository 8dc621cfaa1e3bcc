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
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "fasrssi/rng.hpp"

namespace fasrssi {

/// N ports spread along a line of length W wavelengths.
///
/// Two position conventions coexist:
///  - correlation formulas use lag spacing W/(N-1) (ports span the full
///    aperture end to end), see correlation_argument();
///  - the ranging geometry places port i at i*W*lambda/N, see port_offset().
struct FasLayout {
    int n_ports = 12;
    double aperture = 0.5;     // W, normalized by wavelength
    double wavelength = 0.125; // lambda, meters

    /// Throws InputError unless n_ports >= min_ports, aperture >= 0,
    /// wavelength > 0.
    void validate(int min_ports = 2) const;

    /// 2*pi*lag*W/(N-1), the Bessel argument for two ports `lag` apart.
    double correlation_argument(int lag) const;

    /// Port coordinate in meters under the ranging-geometry convention.
    double port_offset(int i) const;

    /// Port coordinate in meters with exact endpoints (i*W*lambda/(N-1)).
    double endpoint_port_offset(int i) const;
};

enum class CorrelationModel {
    JakesExact,  ///< per-pair J0 of the port separation
    AverageMu,   ///< equicorrelated, off-diagonal mu^2
    Independent, ///< identity (conventional multipoint array)
};

std::string_view to_string(CorrelationModel model);
/// Accepts "jakes", "average-mu", "independent" (and underscore variants).
CorrelationModel parse_correlation_model(std::string_view name);

/// sigma2 * R, with R kept separately so the unit diagonal stays visible.
struct CovarianceMatrix {
    Eigen::MatrixXd correlation; ///< R; diagonal is 1 + regularization_shift
    double sigma2 = 1.0;         ///< fading variance in dB^2
    double regularization_shift = 0.0;
    bool regularized = false;

    int dim() const { return static_cast<int>(correlation.rows()); }
    Eigen::MatrixXd covariance() const { return sigma2 * correlation; }
};

/// Correlation of port k with the reference port 0: J0(2*pi*k*W/(N-1)).
double mu_k(const FasLayout& layout, int k);

/// Correlation of ports k != l: J0(2*pi*(k-l)*W/(N-1)).
double rho_pair(const FasLayout& layout, int k, int l);

/// Average correlation coefficient
///   | 2/(N(N-1)) * sum_{k=1}^{N-1} (N-k) J0(2*pi*k*W/(N-1)) |.
/// The absolute value is part of the definition, so the result is in [0, 1]
/// even where the raw sum is negative.
double average_mu_squared(const FasLayout& layout);

/// Builds sigma2 * R for the chosen model. Indefinite matrices (JakesExact
/// rounding) get their diagonal shifted by |lambda_min| + 1e-12; a shift above
/// 1e-6 throws ModelValidityError.
CovarianceMatrix build_covariance(const FasLayout& layout, CorrelationModel model, double sigma2);

/// Applies the PSD correction used by build_covariance: when the smallest
/// eigenvalue of cov.correlation is negative the diagonal is raised by
/// |lambda_min| + 1e-12 and the shift recorded. Throws ModelValidityError when
/// the shift would exceed 1e-6.
void regularize_psd(CovarianceMatrix& cov);

/// Eigenvalues of the correlation part, ascending.
Eigen::VectorXd correlation_eigenvalues(const CovarianceMatrix& cov);

/// Holds a square-root factor F with F*F^T = covariance and colors i.i.d.
/// standard normals with it. Cholesky when the matrix is definite, otherwise
/// a symmetric eigen factor (rank-deficient correlation, e.g. W = 0).
class FadingSampler {
public:
    explicit FadingSampler(const CovarianceMatrix& cov);

    int dim() const { return static_cast<int>(factor_.rows()); }
    const Eigen::MatrixXd& factor() const { return factor_; }

    /// out = F * white. Both spans have length dim().
    void color(std::span<const double> white, std::span<double> out) const;

    /// One correlated draw consuming dim() normals from `rng`.
    Eigen::VectorXd draw(CounterRng& rng) const;

private:
    Eigen::MatrixXd factor_;
};

/// n_draws x N matrix; row t is the t-th correlated draw of stream `stream`.
Eigen::MatrixXd sample_fading(const CovarianceMatrix& cov, StreamId stream, int n_draws);

} // namespace fasrssi
