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
#include <sstream>

#include <gtest/gtest.h>

#include "fasrssi/errors.hpp"
#include "fasrssi/experiments.hpp"
#include "fasrssi/result_io.hpp"

namespace {

using namespace fasrssi;

std::vector<Estimate> at(std::vector<double> d_hat) {
    std::vector<Estimate> out;
    for (double d : d_hat) out.push_back({d, true, 0, 0.0});
    return out;
}

std::string csv_of(const ResultTable& t) {
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

ResultRow row(double x, double nmse, double se) {
    ResultRow r;
    r.axis_value = x;
    r.nmse_db = nmse;
    r.stderr_db = se;
    return r;
}

TEST(NmseDb, ExactEstimatesHitFloor) {
    const auto [nmse, se] = nmse_db(at(std::vector<double>(50, 10.0)), 10.0);
    EXPECT_EQ(nmse, -200.0);
    EXPECT_EQ(se, 0.0);
}

TEST(NmseDb, UnitNormalizedError) {
    EXPECT_NEAR(nmse_db(at(std::vector<double>(10, 20.0)), 10.0).first, 0.0, 1e-12);
}

TEST(NmseDb, GaussianTenPercentError) {
    std::mt19937_64 gen(2024);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> d(100000);
    for (double& v : d) v = 10.0 + noise(gen);
    const auto [nmse, se] = nmse_db(at(d), 10.0);
    EXPECT_NEAR(nmse, -20.0, 0.2);
    // squared Gaussian errors: var(e^2)/mean(e^2)^2 = 2, so se ~ 4.34 * sqrt(2/n)
    EXPECT_NEAR(se, 10.0 / std::log(10.0) * std::sqrt(2.0 / d.size()), 0.003);
}

TEST(NmseDb, Errors) {
    EXPECT_THROW(nmse_db(std::vector<Estimate>{}, 10.0), InputError);
    EXPECT_THROW(nmse_db(at({1.0}), 0.0), InputError);
}

TEST(Sweep, Fig3RealizedPortCounts) {
    const auto pts = sweep_points(fig3_preset(42, 100));
    ASSERT_EQ(pts.size(), 38u);
    for (const auto& p : pts) {
        ASSERT_TRUE(p.spacing_h);
        const int expect = std::max(2, static_cast<int>(std::lround(p.axis_value / *p.spacing_h)));
        EXPECT_EQ(p.layout.n_ports, expect) << p.axis_value << " " << *p.spacing_h;
        EXPECT_DOUBLE_EQ(p.sigma2, 0.1);
    }
    // W = 0.5 at h = 0.01 and h = 0.05
    EXPECT_EQ(pts[8].layout.n_ports, 10);
    EXPECT_EQ(pts[19 + 8].layout.n_ports, 50);
}

TEST(Sweep, SnrAxisSetsSigma) {
    const auto pts = sweep_points(fig2_preset(42, 100));
    ASSERT_EQ(pts.size(), 7u);
    EXPECT_DOUBLE_EQ(pts[0].sigma2, 1.0);
    EXPECT_DOUBLE_EQ(pts[2].sigma2, 0.1);
    EXPECT_EQ(pts[6].layout.n_ports, 12);
}

TEST(Spec, Validation) {
    auto bad = fig2_preset(1, 100);
    bad.axis_values = {10.0, 5.0};
    EXPECT_THROW(bad.validate(), InputError);
    bad = fig2_preset(1, 99);
    EXPECT_THROW(bad.validate(), InputError);
    bad = fig2_preset(1, 100);
    bad.estimators.clear();
    EXPECT_THROW(bad.validate(), InputError);
    bad = fig2_preset(1, 100);
    bad.spacing_h = {0.01};
    EXPECT_THROW(bad.validate(), InputError);
    bad = port_doubling_preset(1, 100);
    bad.axis_values = {3, 4.5};
    EXPECT_THROW(bad.validate(), InputError);
    bad = fig2_preset(1, 100);
    bad.workers = 0;
    EXPECT_THROW(bad.validate(), InputError);
}

TEST(Spec, HashIgnoresWorkersOnly) {
    auto a = fig2_preset(42, 2000), b = a;
    b.workers = 8;
    EXPECT_EQ(a.hash(), b.hash());
    b.base_seed = 43;
    EXPECT_NE(a.hash(), b.hash());
    EXPECT_EQ(a.hash().size(), 16u);
}

TEST(Experiment, DeterministicAcrossRunsAndWorkers) {
    auto spec = fig2_preset(42, 200);
    const std::string first = csv_of(run_experiment(spec));
    EXPECT_EQ(first, csv_of(run_experiment(spec)));
    spec.workers = 4;
    EXPECT_EQ(first, csv_of(run_experiment(spec)));
    spec.base_seed = 7;
    EXPECT_NE(first, csv_of(run_experiment(spec)));
}

TEST(Experiment, DrawsArePairedAcrossEstimators) {
    auto full = fig2_preset(42, 100);
    auto partial = full;
    partial.estimators = {EstimatorMethod::MultipointLs, EstimatorMethod::FasLs};
    const auto pts = sweep_points(full);
    for (std::uint32_t t = 0; t < 20; ++t) {
        const auto a = run_trial(full, pts[2], 2, t);
        const auto b = run_trial(partial, pts[2], 2, t);
        EXPECT_EQ(a.draw_digest, b.draw_digest);
        for (auto d : a.input_digests) EXPECT_EQ(d, a.draw_digest);
        // same draw, same answer, no matter which other estimators ran
        EXPECT_EQ(a.estimates[1].d_hat, b.estimates[1].d_hat);
        EXPECT_EQ(a.estimates[2].d_hat, b.estimates[0].d_hat);
        EXPECT_NE(run_trial(full, pts[2], 2, t + 1).draw_digest, a.draw_digest);
    }
}

TEST(Experiment, TrialMatchesDirectConstruction) {
    const auto spec = fig2_preset(42, 100);
    const auto pts = sweep_points(spec);
    const auto& p = pts[2];
    const auto out = run_trial(spec, p, 2, 5);

    CounterRng rng(trial_stream(42, 2, 5));
    std::vector<double> z(12);
    for (double& v : z) v = rng.standard_normal();
    const FadingSampler sampler(build_covariance(p.layout, CorrelationModel::AverageMu, p.sigma2));
    std::vector<double> fade(12);
    sampler.color(z, fade);
    MeasurementSet fas{std::vector<double>(12), p.layout, std::nullopt, p.sigma2};
    for (int i = 0; i < 12; ++i) fas.rssi_dbm[i] = mean_rssi(p.layout, spec.scene, i) + fade[i];
    const auto cfg = bracket_around(EstimatorConfig{}, spec.scene.distance, spec.bracket_factor);
    const auto link = link_model(spec.scene, p.layout.wavelength);
    EXPECT_EQ(out.estimates[1].d_hat, estimate_ls(fas, link, spec.scene.bearing, cfg).d_hat);
}

TEST(Experiment, NmseNonIncreasingInSnr) {
    const auto table = run_experiment(fig2_preset(42, 2000));
    EXPECT_EQ(table.rows.size(), 28u);
    for (auto m : fig2_preset().estimators) {
        const auto s = table.series(m);
        for (std::size_t k = 0; k + 1 < s.size(); ++k) {
            EXPECT_LE(s[k + 1].nmse_db, s[k].nmse_db + 2.0 * std::hypot(s[k].stderr_db, s[k + 1].stderr_db))
                << to_string(m) << " at " << s[k].axis_value;
        }
    }
}

TEST(Experiment, TightBracketFlagsRows) {
    auto spec = fig2_preset(42, 200);
    spec.axis_values = {0.0};
    spec.estimators = {EstimatorMethod::FasLs};
    spec.bracket_factor = 1.01; // the bracket excludes most noisy estimates
    const auto table = run_experiment(spec);
    ASSERT_EQ(table.rows.size(), 1u);
    EXPECT_GT(table.rows[0].excluded, 10);
    EXPECT_TRUE(table.rows[0].flagged);
    EXPECT_EQ(table.rows[0].trials + table.rows[0].excluded, 200);
}

TEST(Experiment, WeightModesAgreeOnFig2Point) {
    auto spec = fig2_preset(42, 2000);
    spec.axis_values = {10.0};
    spec.estimators = {EstimatorMethod::FasMle};
    const auto self = run_experiment(spec).rows.at(0);
    spec.weights = WeightMode::Frozen;
    const auto frozen = run_experiment(spec).rows.at(0);
    EXPECT_NEAR(self.nmse_db, frozen.nmse_db, 2.0 * std::hypot(self.stderr_db, frozen.stderr_db));
}

TEST(Experiment, FullyCorrelatedMleIsRejected) {
    auto spec = fig2_preset(42, 100);
    spec.aperture = 0.0;
    EXPECT_THROW(run_experiment(spec), ModelValidityError);
}

TEST(DoublingGain, FlatTableGivesZero) {
    ResultTable t;
    t.axis = SweepAxis::PortCountN;
    for (double n : {3.0, 6.0, 12.0, 24.0}) {
        auto r = row(n, -25.0, 0.1);
        r.estimator = EstimatorMethod::FasLs;
        t.rows.push_back(r);
    }
    const double ns[] = {3, 6, 12, 24};
    EXPECT_EQ(doubling_gain(t, EstimatorMethod::FasLs, ns), (std::vector<double>{0, 0, 0}));
    const double gap[] = {3, 6, 12, 24, 48};
    EXPECT_THROW(doubling_gain(t, EstimatorMethod::FasLs, gap), InputError);
    const double uneven[] = {3, 6, 10};
    EXPECT_THROW(doubling_gain(t, EstimatorMethod::FasLs, uneven), InputError);
    t.axis = SweepAxis::SnrDb;
    EXPECT_THROW(doubling_gain(t, EstimatorMethod::FasLs, ns), InputError);
}

TEST(DoublingGain, IndependentNoiseAveragesThreeDb) {
    auto spec = port_doubling_preset(42, 10000);
    spec.estimators = {EstimatorMethod::MultipointLs};
    const auto table = run_experiment(spec);
    const double ns[] = {3, 6, 12, 24};
    for (double g : doubling_gain(table, EstimatorMethod::MultipointLs, ns)) {
        EXPECT_NEAR(g, 10.0 * std::log10(2.0), 0.3);
    }
}

TEST(Extrema, SyntheticSeries) {
    // clear dip at x = 3
    std::vector<ResultRow> dip = {row(1, -20, 0.1), row(2, -21, 0.1), row(3, -23, 0.1),
                                  row(4, -21.5, 0.1), row(5, -21, 0.1)};
    EXPECT_EQ(significant_extrema(dip), (std::vector<double>{3}));
    // same shape buried in noise
    for (auto& r : dip) r.stderr_db = 2.0;
    EXPECT_TRUE(significant_extrema(dip).empty());
    // monotone
    std::vector<ResultRow> mono = {row(1, -20, 0.1), row(2, -21, 0.1), row(3, -22, 0.1)};
    EXPECT_TRUE(significant_extrema(mono).empty());
    EXPECT_TRUE(significant_extrema({}).empty());
}

TEST(Conventions, StampedIntoHeader) {
    auto spec = fig2_preset(42, 100);
    spec.axis_values = {10.0};
    const auto t = run_experiment(spec);
    auto has = [&](const std::string& key, const std::string& value) {
        for (const auto& [k, v] : t.header) {
            if (k == key) return v == value;
        }
        return false;
    };
    EXPECT_TRUE(has("nmse_formula", nmse_convention()));
    EXPECT_TRUE(has("snr_convention", snr_convention()));
    EXPECT_TRUE(has("spec_hash", spec.hash()));
}

} // namespace
