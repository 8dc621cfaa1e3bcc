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

#include "fasrssi/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fasrssi/errors.hpp"
#include "fasrssi/specfun.hpp"

namespace fasrssi {
namespace {

constexpr double kShiftFloor = 1e-12;
constexpr double kMaxShift = 1e-6;

void check_port(const FasLayout& layout, int k, const char* what) {
    if (k < 0 || k >= layout.n_ports) {
        throw InputError(std::string(what) + ": port index " + std::to_string(k) +
                         " outside [0, " + std::to_string(layout.n_ports - 1) + "]");
    }
}

} // namespace

void FasLayout::validate(int min_ports) const {
    if (n_ports < min_ports) {
        throw InputError("layout: n_ports must be >= " + std::to_string(min_ports) + ", got " +
                         std::to_string(n_ports));
    }
    if (!(aperture >= 0.0) || !std::isfinite(aperture)) {
        throw InputError("layout: aperture must be finite and >= 0");
    }
    if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
        throw InputError("layout: wavelength must be finite and > 0");
    }
}

double FasLayout::correlation_argument(int lag) const {
    return 2.0 * std::numbers::pi * lag * aperture / (n_ports - 1);
}

double FasLayout::port_offset(int i) const {
    return i * aperture * wavelength / n_ports;
}

double FasLayout::endpoint_port_offset(int i) const {
    return n_ports > 1 ? i * aperture * wavelength / (n_ports - 1) : 0.0;
}

std::string_view to_string(CorrelationModel model) {
    switch (model) {
    case CorrelationModel::JakesExact: return "jakes";
    case CorrelationModel::AverageMu: return "average-mu";
    case CorrelationModel::Independent: return "independent";
    }
    return "unknown";
}

CorrelationModel parse_correlation_model(std::string_view name) {
    if (name == "jakes" || name == "jakes-exact" || name == "jakes_exact") {
        return CorrelationModel::JakesExact;
    }
    if (name == "average-mu" || name == "average_mu") return CorrelationModel::AverageMu;
    if (name == "independent") return CorrelationModel::Independent;
    throw InputError("unknown correlation model '" + std::string(name) + "'");
}

double mu_k(const FasLayout& layout, int k) {
    layout.validate(2);
    check_port(layout, k, "mu_k");
    return specfun::bessel_j0(layout.correlation_argument(k));
}

double rho_pair(const FasLayout& layout, int k, int l) {
    layout.validate(2);
    check_port(layout, k, "rho_pair");
    check_port(layout, l, "rho_pair");
    if (k == l) throw InputError("rho_pair: k == l (self-correlation is 1 by convention)");
    return specfun::bessel_j0(layout.correlation_argument(std::abs(k - l)));
}

double average_mu_squared(const FasLayout& layout) {
    layout.validate(2);
    const int n = layout.n_ports;
    double sum = 0.0;
    for (int k = 1; k < n; ++k) {
        sum += (n - k) * specfun::bessel_j0(layout.correlation_argument(k));
    }
    return std::abs(2.0 / (static_cast<double>(n) * (n - 1)) * sum);
}

CovarianceMatrix build_covariance(const FasLayout& layout, CorrelationModel model, double sigma2) {
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
        throw InputError("build_covariance: sigma2 must be finite and > 0");
    }
    layout.validate(model == CorrelationModel::Independent ? 1 : 2);
    const int n = layout.n_ports;

    CovarianceMatrix cov;
    cov.sigma2 = sigma2;
    cov.correlation = Eigen::MatrixXd::Identity(n, n);

    switch (model) {
    case CorrelationModel::Independent:
        break;
    case CorrelationModel::AverageMu: {
        const double a = average_mu_squared(layout);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) cov.correlation(i, j) = a;
        break;
    }
    case CorrelationModel::JakesExact: {
        // Toeplitz: one J0 per lag, copied to both triangles so the matrix is
        // exactly symmetric.
        for (int lag = 1; lag < n; ++lag) {
            const double r = specfun::bessel_j0(layout.correlation_argument(lag));
            for (int i = 0; i + lag < n; ++i) {
                cov.correlation(i, i + lag) = r;
                cov.correlation(i + lag, i) = r;
            }
        }
        break;
    }
    }

    if (model != CorrelationModel::Independent) regularize_psd(cov);
    return cov;
}

void regularize_psd(CovarianceMatrix& cov) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov.correlation, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw NumericalError("regularize_psd: eigen solver failed");
    const double min_eig = eig.eigenvalues()(0);
    if (!(min_eig < 0.0)) return;
    const double shift = -min_eig + kShiftFloor;
    if (shift > kMaxShift) {
        throw ModelValidityError("correlation matrix needs a diagonal shift of " +
                                 std::to_string(shift) +
                                 " (> 1e-6); model is outside its validity range");
    }
    cov.correlation.diagonal().array() += shift;
    cov.regularization_shift += shift;
    cov.regularized = true;
}

Eigen::VectorXd correlation_eigenvalues(const CovarianceMatrix& cov) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov.correlation, Eigen::EigenvaluesOnly);
    return eig.eigenvalues();
}

FadingSampler::FadingSampler(const CovarianceMatrix& cov) {
    const Eigen::MatrixXd c = cov.covariance();
    if (!c.allFinite()) throw NumericalError("FadingSampler: covariance has non-finite entries");
    Eigen::LLT<Eigen::MatrixXd> llt(c);
    if (llt.info() == Eigen::Success) {
        factor_ = llt.matrixL();
        return;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c);
    if (eig.info() != Eigen::Success) {
        throw NumericalError("FadingSampler: covariance factorization failed");
    }
    const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    factor_ = eig.eigenvectors() * root.asDiagonal();
}

void FadingSampler::color(std::span<const double> white, std::span<double> out) const {
    const Eigen::Index n = factor_.rows();
    Eigen::Map<const Eigen::VectorXd> w(white.data(), n);
    Eigen::Map<Eigen::VectorXd> o(out.data(), n);
    o.noalias() = factor_ * w;
}

Eigen::VectorXd FadingSampler::draw(CounterRng& rng) const {
    Eigen::VectorXd white(factor_.rows());
    for (Eigen::Index i = 0; i < white.size(); ++i) white(i) = rng.standard_normal();
    return factor_ * white;
}

Eigen::MatrixXd sample_fading(const CovarianceMatrix& cov, StreamId stream, int n_draws) {
    if (n_draws < 1) throw InputError("sample_fading: n_draws must be >= 1");
    const FadingSampler sampler(cov);
    CounterRng rng(stream);
    Eigen::MatrixXd out(n_draws, sampler.dim());
    for (int t = 0; t < n_draws; ++t) out.row(t) = sampler.draw(rng).transpose();
    return out;
}

} // namespace fasrssi
