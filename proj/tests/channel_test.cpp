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

#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "bessel_oracle.hpp"
#include "fasrssi/channel.hpp"
#include "fasrssi/errors.hpp"

namespace {

using namespace fasrssi;

constexpr double kJ0Pi = -0.304242177644093864;
constexpr double kMu2Fig2 = 0.600104190359895990; // N=12, W=0.5, 40-digit reference

FasLayout layout(int n, double w, double lambda = 0.125) { return {n, w, lambda}; }

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& x) {
    const Eigen::RowVectorXd mean = x.colwise().mean();
    const Eigen::MatrixXd c = x.rowwise() - mean;
    return c.transpose() * c / static_cast<double>(x.rows() - 1);
}

TEST(Layout, Validation) {
    EXPECT_NO_THROW(layout(2, 0.5).validate());
    EXPECT_THROW(layout(1, 0.5).validate(), InputError);
    EXPECT_NO_THROW(layout(1, 0.5).validate(1));
    EXPECT_THROW(layout(4, -0.1).validate(), InputError);
    EXPECT_THROW(layout(4, 0.5, 0.0).validate(), InputError);
}

TEST(Layout, PortConventions) {
    const auto l = layout(12, 0.5, 1.0);
    EXPECT_DOUBLE_EQ(l.port_offset(3), 3 * 0.5 / 12);
    EXPECT_DOUBLE_EQ(l.endpoint_port_offset(11), 0.5);
    EXPECT_DOUBLE_EQ(l.correlation_argument(11), M_PI);
}

TEST(MuK, Examples) {
    EXPECT_EQ(mu_k(layout(12, 0.5), 0), 1.0);
    EXPECT_NEAR(mu_k(layout(2, 0.5), 1), kJ0Pi, 1e-9);
    EXPECT_NEAR(mu_k(layout(12, 0.5), 11), kJ0Pi, 1e-9);
    EXPECT_THROW(mu_k(layout(12, 0.5), 12), InputError);
}

TEST(RhoPair, Examples) {
    const auto l = layout(12, 0.5);
    EXPECT_THROW(rho_pair(l, 3, 3), InputError);
    // J0(pi/11) from a 40-digit reference.
    EXPECT_NEAR(rho_pair(l, 5, 4), 0.9797119759440423, 1e-12);
    EXPECT_NEAR(rho_pair(l, 0, 11), kJ0Pi, 1e-9);
}

TEST(RhoPair, SymmetricAndLagOnly) {
    const auto l = layout(9, 0.73);
    for (int k = 0; k < 9; ++k) {
        for (int m = 0; m < 9; ++m) {
            if (k == m) continue;
            EXPECT_EQ(rho_pair(l, k, m), rho_pair(l, m, k));
            EXPECT_EQ(rho_pair(l, k, m), mu_k(l, std::abs(k - m)));
        }
    }
}

TEST(AverageMuSquared, Examples) {
    EXPECT_DOUBLE_EQ(average_mu_squared(layout(2, 0.0)), 1.0);
    EXPECT_NEAR(average_mu_squared(layout(2, 0.5)), -kJ0Pi, 1e-6);
    EXPECT_NEAR(average_mu_squared(layout(12, 0.5)), kMu2Fig2, 1e-12);
    EXPECT_NEAR(average_mu_squared(layout(12, 0.5)),
                oracle::average_mu_squared_oracle(12, 0.5), 1e-12);
}

TEST(AverageMuSquared, WithinUnitIntervalAndMatchesOracle) {
    std::mt19937_64 gen(11);
    std::uniform_int_distribution<int> n_dist(2, 64);
    std::uniform_real_distribution<double> w_dist(0.0, 5.0);
    for (int k = 0; k < 200; ++k) {
        const int n = n_dist(gen);
        const double w = w_dist(gen);
        const double mu2 = average_mu_squared(layout(n, w));
        EXPECT_GE(mu2, 0.0);
        EXPECT_LE(mu2, 1.0);
        if (k < 40) {
            EXPECT_NEAR(mu2, oracle::average_mu_squared_oracle(n, w), 1e-11);
        }
    }
}

TEST(BuildCovariance, IndependentIsScaledIdentity) {
    const auto cov = build_covariance(layout(3, 0.5), CorrelationModel::Independent, 4.0);
    EXPECT_TRUE(cov.covariance().isApprox(4.0 * Eigen::MatrixXd::Identity(3, 3)));
    EXPECT_FALSE(cov.regularized);
    // a single port is allowed only here
    EXPECT_NO_THROW(build_covariance(layout(1, 0.5), CorrelationModel::Independent, 1.0));
    EXPECT_THROW(build_covariance(layout(1, 0.5), CorrelationModel::AverageMu, 1.0), InputError);
}

TEST(BuildCovariance, TwoPortAverageMu) {
    const auto cov = build_covariance(layout(2, 0.5), CorrelationModel::AverageMu, 1.0);
    const auto c = cov.covariance();
    EXPECT_NEAR(c(0, 0), 1.0, 1e-9);
    EXPECT_NEAR(c(1, 1), 1.0, 1e-9);
    EXPECT_NEAR(c(0, 1), 0.304242, 1e-6);
    EXPECT_EQ(c(0, 1), c(1, 0));
}

TEST(BuildCovariance, RejectsBadSigma) {
    EXPECT_THROW(build_covariance(layout(4, 0.5), CorrelationModel::AverageMu, 0.0), InputError);
    EXPECT_THROW(build_covariance(layout(4, 0.5), CorrelationModel::AverageMu, NAN), InputError);
}

TEST(BuildCovariance, EquicorrelatedEigenvalues) {
    std::mt19937_64 gen(5);
    std::uniform_int_distribution<int> n_dist(2, 40);
    std::uniform_real_distribution<double> w_dist(0.05, 3.0);
    for (int k = 0; k < 50; ++k) {
        const int n = n_dist(gen);
        const double w = w_dist(gen);
        const auto cov = build_covariance(layout(n, w), CorrelationModel::AverageMu, 1.0);
        const double mu2 = average_mu_squared(layout(n, w));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov.correlation);
        const auto ev = es.eigenvalues(); // ascending
        for (int i = 0; i + 1 < n; ++i) EXPECT_NEAR(ev(i), 1.0 - mu2, 1e-9) << n << " " << w;
        EXPECT_NEAR(ev(n - 1), 1.0 + (n - 1) * mu2, 1e-9) << n << " " << w;
    }
}

TEST(BuildCovariance, Fig2MatrixIsPositiveDefinite) {
    const auto cov = build_covariance(layout(12, 0.5), CorrelationModel::AverageMu, 1.0);
    const auto ev = correlation_eigenvalues(cov);
    EXPECT_NEAR(ev.minCoeff(), 1.0 - kMu2Fig2, 1e-12);
    EXPECT_FALSE(cov.regularized);
}

TEST(BuildCovariance, SymmetricAndPsdAcrossModels) {
    for (auto model : {CorrelationModel::JakesExact, CorrelationModel::AverageMu}) {
        for (int n : {2, 3, 6, 12, 24}) {
            for (double w : {0.0, 0.1, 0.25, 0.5, 1.0, 2.0}) {
                CovarianceMatrix cov;
                try {
                    cov = build_covariance(layout(n, w), model, 1.0);
                } catch (const ModelValidityError&) {
                    continue; // loud failure is the contract for large corrections
                }
                EXPECT_EQ((cov.correlation - cov.correlation.transpose()).norm(), 0.0);
                EXPECT_GE(correlation_eigenvalues(cov).minCoeff(), -1e-12) << n << " " << w;
                EXPECT_LE(cov.regularization_shift, 1e-6);
            }
        }
    }
}

TEST(BuildCovariance, FullyCorrelatedApertureIsRegularized) {
    const auto cov = build_covariance(layout(12, 0.0), CorrelationModel::AverageMu, 1.0);
    EXPECT_TRUE(cov.regularized);
    const auto ev = correlation_eigenvalues(cov);
    EXPECT_NEAR(ev.minCoeff(), 0.0, 1e-9);
    EXPECT_NEAR(ev.maxCoeff(), 12.0, 1e-9);
}

TEST(RegularizePsd, SmallDeficitIsShifted) {
    CovarianceMatrix cov;
    cov.correlation = Eigen::Matrix2d{{1.0, 1.0 + 1e-9}, {1.0 + 1e-9, 1.0}};
    regularize_psd(cov);
    EXPECT_TRUE(cov.regularized);
    EXPECT_NEAR(cov.regularization_shift, 1e-9 + 1e-12, 1e-14);
    EXPECT_GE(correlation_eigenvalues(cov).minCoeff(), 0.0);
}

TEST(RegularizePsd, LargeDeficitFailsLoudly) {
    CovarianceMatrix cov;
    cov.correlation = Eigen::Matrix2d{{1.0, 1.5}, {1.5, 1.0}};
    EXPECT_THROW(regularize_psd(cov), ModelValidityError);
}

TEST(RegularizePsd, PositiveDefiniteIsUntouched) {
    CovarianceMatrix cov;
    cov.correlation = Eigen::Matrix2d{{1.0, 0.3}, {0.3, 1.0}};
    regularize_psd(cov);
    EXPECT_FALSE(cov.regularized);
    EXPECT_EQ(cov.regularization_shift, 0.0);
}

TEST(SampleFading, IidSampleCovariance) {
    const double sigma2 = 2.5;
    const auto cov = build_covariance(layout(2, 0.5), CorrelationModel::Independent, sigma2);
    const auto x = sample_fading(cov, {123, 0}, 100000);
    ASSERT_EQ(x.rows(), 100000);
    ASSERT_EQ(x.cols(), 2);
    const auto s = sample_covariance(x);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            EXPECT_NEAR(s(i, j), i == j ? sigma2 : 0.0, 0.05 * sigma2);
        }
    }
}

TEST(SampleFading, EquicorrelatedOffDiagonals) {
    const auto cov = build_covariance(layout(12, 0.5), CorrelationModel::AverageMu, 1.0);
    const auto x = sample_fading(cov, {42, 1}, 100000);
    const auto s = sample_covariance(x);
    const Eigen::VectorXd sd = s.diagonal().cwiseSqrt();
    for (int i = 0; i < 12; ++i) {
        for (int j = i + 1; j < 12; ++j) {
            EXPECT_NEAR(s(i, j) / (sd(i) * sd(j)), kMu2Fig2, 0.02) << i << "," << j;
        }
    }
}

TEST(SampleFading, FrobeniusConcentration) {
    const int n_draws = 100000;
    for (auto model : {CorrelationModel::AverageMu, CorrelationModel::JakesExact}) {
        const auto cov = build_covariance(layout(12, 0.5), model, 1.0);
        const auto s = sample_covariance(sample_fading(cov, {9, 3}, n_draws));
        EXPECT_LE((s - cov.covariance()).norm(), 5.0 / std::sqrt(n_draws) * 12);
    }
}

TEST(SampleFading, SemidefiniteTargetStillSamples) {
    const auto cov = build_covariance(layout(4, 0.0), CorrelationModel::AverageMu, 1.0);
    const auto x = sample_fading(cov, {1, 1}, 2000);
    // W = 0: all ports see the same fade.
    for (int r = 0; r < 10; ++r) EXPECT_NEAR(x(r, 0), x(r, 3), 1e-5);
}

TEST(SampleFading, Deterministic) {
    const auto cov = build_covariance(layout(12, 0.5), CorrelationModel::AverageMu, 0.1);
    const auto a = sample_fading(cov, {77, 5}, 1);
    const auto b = sample_fading(cov, {77, 5}, 1);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, sample_fading(cov, {77, 6}, 1));
    EXPECT_THROW(sample_fading(cov, {77, 5}, 0), InputError);
}

TEST(CorrelationModel, ParseRoundTrip) {
    for (auto m : {CorrelationModel::JakesExact, CorrelationModel::AverageMu,
                   CorrelationModel::Independent}) {
        EXPECT_EQ(parse_correlation_model(to_string(m)), m);
    }
    EXPECT_THROW(parse_correlation_model("custom"), InputError);
}

} // namespace
